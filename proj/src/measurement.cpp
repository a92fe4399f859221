#include "ngforge/measurement.hpp"

#include <cmath>

#include "ngforge/gaussian.hpp"

namespace ngforge {

QubitState::QubitState(Complex h, Complex v) : c_h(h), c_v(v) {
    double n = std::norm(h) + std::norm(v);
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("QubitState: not normalized");
}

QubitState QubitState::from_angles(double theta, double delta) {
    return {std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), delta)};
}

Observable::Observable(const Eigen::Matrix2cd& mat) : m(mat) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("Observable: matrix must be Hermitian");
    if ((m * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("Observable: A^2 must equal the identity");
}

Observable Observable::sigma_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return Observable(m);
}

Observable Observable::sigma_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return Observable(m);
}

Observable Observable::bloch(double nx, double ny, double nz) {
    Eigen::Matrix2cd m;
    m << nz, Complex(nx, -ny), Complex(nx, ny), -nz;
    return Observable(m);
}

SelectionPair::SelectionPair(QubitState i, QubitState f, Observable obs)
    : psi_i(i), psi_f(f), a(std::move(obs)) {
    if (std::abs(overlap()) <= 1e-12)
        throw std::invalid_argument("SelectionPair: postselection orthogonal to preparation");
}

Complex SelectionPair::overlap() const {
    return psi_f.vec().dot(psi_i.vec());
}

WeakValue weak_value(const SelectionPair& sel) {
    Complex num = sel.psi_f.vec().dot(sel.a.m * sel.psi_i.vec());
    return WeakValue{num / sel.overlap()};
}

SelectionPair sigma_x_selection(double theta, double delta) {
    if (!(theta >= 0.0 && theta < M_PI))
        throw std::invalid_argument("sigma_x_selection: theta must lie in [0, pi)");
    return SelectionPair(QubitState::from_angles(theta, delta), QubitState::horizontal(),
                         Observable::sigma_x());
}

CouplingSpec CouplingSpec::strength(double s) {
    if (!(s >= 0.0)) throw std::invalid_argument("CouplingSpec: s must be >= 0");
    return CouplingSpec{s, Quadrature::P, std::nullopt, std::nullopt};
}

CouplingSpec CouplingSpec::from_g_sigma(double g, double sigma, Quadrature q) {
    if (!(sigma > 0.0)) throw std::invalid_argument("CouplingSpec: sigma must be positive");
    double s = g / (2.0 * sigma);
    if (!(s >= 0.0)) throw std::invalid_argument("CouplingSpec: g/(2 sigma) must be >= 0");
    return CouplingSpec{s, q, g, sigma};
}

namespace {

// Branch displacements of the channel: (d+, d-).
std::pair<Complex, Complex> branch_displacements(const CouplingSpec& c) {
    if (c.quadrature == Quadrature::P) {
        if (c.g && c.sigma && std::abs(c.s - *c.g / (2.0 * *c.sigma)) > 1e-12)
            throw std::invalid_argument("CouplingSpec: s inconsistent with g/(2 sigma)");
        return {Complex(c.s, 0.0), Complex(-c.s, 0.0)};
    }
    if (!c.g || !c.sigma)
        throw std::invalid_argument("X-quadrature channel requires g and sigma");
    Complex d(0.0, -*c.g * *c.sigma);
    return {d, -d};
}

} // namespace

ChannelResult postselect_channel(const FockVector& pointer, const WeakValue& wv,
                                 Complex overlap, const CouplingSpec& coupling) {
    if (std::abs(overlap) == 0.0)
        throw std::invalid_argument("postselect_channel: zero selection overlap");
    if (!pointer.is_normalized(1e-8))
        throw std::invalid_argument("postselect_channel: pointer must be normalized");
    auto [dp, dm] = branch_displacements(coupling);
    FockOperator up = displacement(dp, pointer.dim);
    FockOperator um = displacement(dm, pointer.dim);
    Vector raw = 0.5 * overlap
                 * (wv.t_plus() * (up.m * pointer.amps) + wv.t_minus() * (um.m * pointer.amps));
    double p = raw.squaredNorm();
    if (p < 1e-15) throw DegenerateCancellation(p);
    return ChannelResult{FockVector(raw / std::sqrt(p), pointer.dim), p};
}

ChannelResult postselect_channel(const FockVector& pointer, const SelectionPair& sel,
                                 const CouplingSpec& coupling) {
    return postselect_channel(pointer, weak_value(sel), sel.overlap(), coupling);
}

TwoModeChannelResult postselect_channel_two_mode(const TwoModeVector& pointer,
                                                 const WeakValue& wv, Complex overlap,
                                                 const CouplingSpec& coupling,
                                                 Mode measured) {
    if (std::abs(overlap) == 0.0)
        throw std::invalid_argument("postselect_channel_two_mode: zero selection overlap");
    if (!pointer.is_normalized(1e-8))
        throw std::invalid_argument("postselect_channel_two_mode: pointer must be normalized");
    auto [dp, dm] = branch_displacements(coupling);
    int n = pointer.dim.single();
    Matrix up = displacement(dp, pointer.dim).m;
    Matrix um = displacement(dm, pointer.dim).m;
    // Apply to the coefficient matrix C(na, nb): mode a acts on the left,
    // mode b on the transposed side.
    Eigen::Map<const RowMatrix> c(pointer.amps.data(), n, n);
    RowMatrix raw(n, n);
    if (measured == Mode::a)
        raw = 0.5 * overlap * (wv.t_plus() * (up * c) + wv.t_minus() * (um * c));
    else
        raw = 0.5 * overlap * (wv.t_plus() * (c * up.transpose()) + wv.t_minus() * (c * um.transpose()));
    Vector flat = Eigen::Map<const Vector>(raw.data(), n * n);
    double p = flat.squaredNorm();
    if (p < 1e-15) throw DegenerateCancellation(p);
    return TwoModeChannelResult{TwoModeVector(flat / std::sqrt(p), pointer.dim), p};
}

Matrix interaction_unitary_exp(const Observable& a, double g, Quadrature q,
                               double sigma, TruncationDim dim) {
    int n = dim.single();
    Matrix quad = quadrature_op(q, sigma, dim).m;
    Matrix h(2 * n, 2 * n);
    h.topLeftCorner(n, n) = a.m(0, 0) * quad;
    h.topRightCorner(n, n) = a.m(0, 1) * quad;
    h.bottomLeftCorner(n, n) = a.m(1, 0) * quad;
    h.bottomRightCorner(n, n) = a.m(1, 1) * quad;
    return expm(Complex(0.0, -g) * h);
}

Matrix interaction_unitary_closed(const Observable& a, double g, Quadrature q,
                                  double sigma, TruncationDim dim) {
    int n = dim.single();
    Matrix quad = quadrature_op(q, sigma, dim).m;
    Matrix em = expm(Complex(0.0, -g) * quad);
    Matrix ep = expm(Complex(0.0, +g) * quad);
    Eigen::Matrix2cd plus = 0.5 * (Eigen::Matrix2cd::Identity() + a.m);
    Eigen::Matrix2cd minus = 0.5 * (Eigen::Matrix2cd::Identity() - a.m);
    Matrix u(2 * n, 2 * n);
    u.topLeftCorner(n, n) = plus(0, 0) * em + minus(0, 0) * ep;
    u.topRightCorner(n, n) = plus(0, 1) * em + minus(0, 1) * ep;
    u.bottomLeftCorner(n, n) = plus(1, 0) * em + minus(1, 0) * ep;
    u.bottomRightCorner(n, n) = plus(1, 1) * em + minus(1, 1) * ep;
    return u;
}

FullEvolutionResult evolve_full(const SelectionPair& sel, const FockVector& pointer,
                                const CouplingSpec& coupling) {
    if (!coupling.g || !coupling.sigma)
        throw std::invalid_argument("evolve_full: coupling must carry g and sigma");
    if (coupling.quadrature == Quadrature::P
        && std::abs(coupling.s - *coupling.g / (2.0 * *coupling.sigma)) > 1e-12)
        throw std::invalid_argument("evolve_full: s inconsistent with g/(2 sigma)");
    int n = pointer.dim.single();
    Matrix u = interaction_unitary_exp(sel.a, *coupling.g, coupling.quadrature,
                                       *coupling.sigma, pointer.dim);
    Vector comp(2 * n);
    comp.head(n) = sel.psi_i.c_h * pointer.amps;
    comp.tail(n) = sel.psi_i.c_v * pointer.amps;
    comp = u * comp;

    int k = std::min(4, n);
    double leakage = comp.segment(n - k, k).squaredNorm() + comp.tail(k).squaredNorm();
    if (leakage > 1e-8)
        throw TruncationError("evolve_full: boundary leakage", leakage);

    Vector proj = std::conj(sel.psi_f.c_h) * comp.head(n) + std::conj(sel.psi_f.c_v) * comp.tail(n);
    double p = proj.squaredNorm();
    if (p < 1e-15) throw DegenerateCancellation(p);
    return FullEvolutionResult{FockVector(std::move(proj), pointer.dim), p, leakage};
}

double success_probability_closed(double theta, double delta, double s, double r) {
    if (!(theta >= 0.0 && theta < M_PI))
        throw std::invalid_argument("success_probability_closed: theta must lie in [0, pi)");
    if (!(s >= 0.0) || !(r >= 0.0))
        throw std::invalid_argument("success_probability_closed: s and r must be >= 0");
    (void)delta;  // cancels in Re(t+* t-) = 1 - |<A>_w|^2
    double e = std::exp(-2.0 * s * s * std::exp(2.0 * r));
    return 0.5 * (1.0 + e * std::cos(theta));
}

} // namespace ngforge
