#include "ngforge/analysis.hpp"

#include <cmath>

#include "ngforge/gaussian.hpp"

namespace ngforge {

void PhaseSpaceGrid::validate() const {
    if (!(x_min < x_max) || !(p_min < p_max))
        throw std::invalid_argument("PhaseSpaceGrid: empty range");
    if (nx < 2 || np < 2) throw std::invalid_argument("PhaseSpaceGrid: need at least 2x2 points");
}

namespace {

void check_map_input_tail(double tail, const char* who) {
    if (tail > 1e-8)
        throw TruncationError(std::string(who) + ": state tail too large for a faithful map", tail);
}

Vector parity_signs(int n) {
    Vector par(n);
    for (int k = 0; k < n; ++k) par(k) = (k % 2 == 0) ? 1.0 : -1.0;
    return par;
}

} // namespace

WignerMap wigner(const FockVector& state, const PhaseSpaceGrid& grid) {
    grid.validate();
    if (!state.is_normalized(1e-8))
        throw std::invalid_argument("wigner: state must be normalized");
    check_map_input_tail(state.tail_mass(), "wigner");
    int n = state.dim.single();
    Vector flipped = parity_signs(n).cwiseProduct(state.amps);
    WignerMap map{grid, Eigen::MatrixXd(grid.nx, grid.np)};
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.np; ++j) {
            Complex beta(grid.x(i), grid.p(j));
            map.values(i, j) =
                (2.0 / M_PI) * displacement_bilinear(state.amps, flipped, 2.0 * beta).real();
        }
    }
    return map;
}

WignerMap wigner(const DensityMatrix& rho, const PhaseSpaceGrid& grid) {
    grid.validate();
    if (rho.two_mode())
        throw std::invalid_argument("wigner: single-mode density matrix expected");
    int n = rho.dim.single();
    // Tr[rho D Pi] = Tr[(Pi rho) D]
    Matrix b = parity_signs(n).asDiagonal() * rho.m;
    WignerMap map{grid, Eigen::MatrixXd(grid.nx, grid.np)};
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.np; ++j) {
            Complex beta(grid.x(i), grid.p(j));
            map.values(i, j) = (2.0 / M_PI) * displacement_trace(b, 2.0 * beta).real();
        }
    }
    return map;
}

namespace {

// Per-point joint parity through Tr[Ma (C Mb^T C^dag)] with Ma = D_a(2a) Pi_a.
struct JointParityEngine {
    Matrix c;  // coefficient matrix of the pure state (or a Cholesky-like list for rho)
    std::vector<std::pair<double, Matrix>> pure_terms;  // (weight, C) decomposition
    int n;

    explicit JointParityEngine(const TwoModeVector& state)
        : c(state.coeffs()), n(state.dim.single()) {
        pure_terms.emplace_back(1.0, c);
    }

    explicit JointParityEngine(const DensityMatrix& rho) : n(rho.dim.single()) {
        // rho = sum_k w_k |psi_k><psi_k| via a Hermitian eigendecomposition.
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho.m);
        for (int k = 0; k < es.eigenvalues().size(); ++k) {
            double w = es.eigenvalues()(k);
            if (w > 1e-14) {
                Eigen::Map<const RowMatrix> ck(es.eigenvectors().col(k).data(), n, n);
                pure_terms.emplace_back(w, Matrix(ck));
            }
        }
    }

    // Z(beta) = sum_k w_k C_k Mb^T C_k^dag, then P_J = Re Tr[(Pi Z) D_a(2 alpha)].
    Matrix z_of(Complex beta) const {
        Matrix mb = displacement_elements(2.0 * beta, n);
        Vector par = parity_signs(n);
        for (int col = 0; col < n; ++col) mb.col(col) *= par(col);  // Mb = D(2b) Pi
        Matrix z = Matrix::Zero(n, n);
        for (const auto& [w, ck] : pure_terms) z += w * (ck * mb.transpose() * ck.adjoint());
        return parity_signs(n).asDiagonal() * z;
    }

    double eval(const Matrix& pz, Complex alpha) const {
        return displacement_trace(pz, 2.0 * alpha).real();
    }
};

JointParityMap run_sections(const JointParityEngine& eng, const SectionSpec& spec) {
    if (spec.n_points < 2) throw std::invalid_argument("SectionSpec: need at least 2 points");
    JointParityMap out{spec, Eigen::MatrixXd()};
    if (spec.is_cut()) {
        out.values.resize(spec.n_points, 1);
        for (int i = 0; i < spec.n_points; ++i) {
            double t = spec.t(i);
            Complex a = (spec.kind == SectionKind::ReDiag) ? Complex(t, 0) : Complex(0, t);
            out.values(i, 0) = eng.eval(eng.z_of(a), a);
        }
        return out;
    }
    out.values.resize(spec.n_points, spec.n_points);
    for (int j = 0; j < spec.n_points; ++j) {
        double tb = spec.t(j);
        Complex b = (spec.kind == SectionKind::ReRe) ? Complex(tb, 0) : Complex(0, tb);
        Matrix pz = eng.z_of(b);
        for (int i = 0; i < spec.n_points; ++i) {
            double ta = spec.t(i);
            Complex a = (spec.kind == SectionKind::ReRe) ? Complex(ta, 0) : Complex(0, ta);
            out.values(i, j) = eng.eval(pz, a);
        }
    }
    return out;
}

} // namespace

JointParityMap joint_parity_map(const TwoModeVector& state, const SectionSpec& spec) {
    if (!state.is_normalized(1e-8))
        throw std::invalid_argument("joint_parity_map: state must be normalized");
    check_map_input_tail(state.tail_mass(), "joint_parity_map");
    return run_sections(JointParityEngine(state), spec);
}

JointParityMap joint_parity_map(const DensityMatrix& rho, const SectionSpec& spec) {
    if (!rho.two_mode())
        throw std::invalid_argument("joint_parity_map: two-mode density matrix expected");
    return run_sections(JointParityEngine(rho), spec);
}

double negativity_volume(const WignerMap& map) {
    return map.values.cwiseAbs().sum() * map.grid.cell_area() - 1.0;
}

double linear_entropy(const TwoModeVector& state, EntropyConvention conv) {
    if (!state.is_normalized(1e-8))
        throw std::invalid_argument("linear_entropy: state must be normalized");
    double purity = reduced_density(state, Mode::a).purity();
    double e = 1.0 - purity;
    if (conv == EntropyConvention::Truncated) {
        double d = state.dim.single();
        e *= d / (d - 1.0);
    }
    return e;
}

double concurrence_general(Complex lambda, Complex delta_coeff, Complex p1, Complex p2,
                           double m_norm) {
    double norm_sq = m_norm * m_norm
                     * (std::norm(lambda) + std::norm(delta_coeff)
                        + 2.0 * (std::conj(lambda) * delta_coeff * p1 * p2).real());
    if (std::abs(norm_sq - 1.0) > 1e-8)
        throw std::invalid_argument("concurrence_general: parameters imply an unnormalized state");
    return std::abs(2.0 * m_norm * m_norm * lambda * delta_coeff)
           * std::sqrt(1.0 - std::norm(p1)) * std::sqrt(1.0 - std::norm(p2));
}

double concurrence_bell_like(double s, Complex wv) {
    if (!(s >= 0.0)) throw std::invalid_argument("concurrence_bell_like: s must be >= 0");
    double e = std::exp(-2.0 * s * s);
    double w2 = std::norm(wv);
    return std::abs((1.0 - e) * (1.0 - w2)) / (1.0 + e + w2 * (1.0 - e));
}

double pure_state_concurrence(const TwoModeVector& state) {
    if (!state.is_normalized(1e-8))
        throw std::invalid_argument("pure_state_concurrence: state must be normalized");
    double purity = reduced_density(state, Mode::a).purity();
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

int count_local_maxima(const WignerMap& map, double min_value) {
    int count = 0;
    for (int i = 1; i + 1 < map.values.rows(); ++i) {
        for (int j = 1; j + 1 < map.values.cols(); ++j) {
            double v = map.values(i, j);
            if (v < min_value) continue;
            bool peak = true;
            for (int di = -1; di <= 1 && peak; ++di)
                for (int dj = -1; dj <= 1 && peak; ++dj)
                    if ((di || dj) && v <= map.values(i + di, j + dj)) peak = false;
            if (peak) ++count;
        }
    }
    return count;
}

int count_sign_changes(const Eigen::VectorXd& values, double eps) {
    int changes = 0;
    int prev = 0;
    for (int i = 0; i < values.size(); ++i) {
        if (std::abs(values(i)) < eps) continue;
        int sgn = values(i) > 0 ? 1 : -1;
        if (prev != 0 && sgn != prev) ++changes;
        prev = sgn;
    }
    return changes;
}

} // namespace ngforge
