#include "ngforge/gaussian.hpp"

#include <cmath>
#include <vector>

namespace ngforge {

namespace {

double wrap_angle(double phi) {
    double w = std::fmod(phi, 2.0 * M_PI);
    if (w < 0) w += 2.0 * M_PI;
    return w;
}

void check_displacement_bound(Complex alpha, TruncationDim dim, const char* who) {
    double m = std::abs(alpha);
    double bound = m * m + 6.0 * m + 10.0;
    if (!(bound < dim.single()))
        throw TruncationError(std::string(who) + ": amplitude too large for truncation",
                              bound / dim.single());
}

void check_state_tail(double tail, const char* who) {
    if (tail >= kTailTolerance)
        throw TruncationError(std::string(who) + ": truncation insufficient", tail);
}

// Accumulates sum_k [ phase^k * S_up(k) + (-phase)^{-k} ... ] over the
// diagonals of D(gamma). The weight functors supply, for diagonal k and row
// offset m, the factor paired with D(m+k, m) (upper) and D(m, m+k) (lower).
template <typename UpperW, typename LowerW>
Complex displacement_diagonal_sum(int n, Complex gamma, UpperW up, LowerW lo) {
    double x = std::norm(gamma);
    if (x == 0.0) {
        Complex acc = 0.0;
        for (int m = 0; m < n; ++m) acc += up(0, m);
        return acc;
    }
    double theta = std::arg(gamma);
    Complex total = 0.0;
    for (int k = 0; k < n; ++k) {
        // l_0^{(k)} = exp(-x/2 + (k/2) ln x - ln(k!)/2)
        double ln_l0 = -0.5 * x + 0.5 * k * std::log(x) - 0.5 * std::lgamma(double(k) + 1.0);
        double l_prev = (ln_l0 < -740.0) ? 0.0 : std::exp(ln_l0);
        Complex acc_up = 0.0, acc_lo = 0.0;
        double l_cur = l_prev;
        for (int m = 0; m < n - k; ++m) {
            if (m == 0) {
                l_cur = l_prev;
            } else if (m == 1) {
                l_cur = (1.0 + k - x) / std::sqrt(1.0 * (1.0 + k)) * l_prev;
            } else {
                int mm = m - 1;
                double l_next = (2.0 * mm + 1.0 + k - x) * l_cur
                                    / std::sqrt(double(mm + 1) * double(mm + 1 + k))
                                - std::sqrt(double(mm) * double(mm + k)
                                            / (double(mm + 1) * double(mm + 1 + k)))
                                      * l_prev;
                l_prev = l_cur;
                l_cur = l_next;
            }
            acc_up += l_cur * up(k, m);
            if (k > 0) acc_lo += l_cur * lo(k, m);
        }
        if (k == 0) {
            total += acc_up;
        } else {
            Complex ph = std::polar(1.0, k * theta);
            double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            total += ph * acc_up + sgn * std::conj(ph) * acc_lo;
        }
    }
    return total;
}

} // namespace

SqueezeParam::SqueezeParam(double r_, double phi_) : r(r_), phi(wrap_angle(phi_)) {
    if (!(r >= 0.0)) throw std::invalid_argument("SqueezeParam: r must be >= 0");
}

FockVector coherent(Complex alpha, TruncationDim dim) {
    check_displacement_bound(alpha, dim, "coherent");
    int n = dim.single();
    Vector v(n);
    v(0) = std::exp(-0.5 * std::norm(alpha));
    for (int k = 1; k < n; ++k) v(k) = v(k - 1) * alpha / std::sqrt(double(k));
    return FockVector(std::move(v), dim);
}

FockOperator displacement(Complex alpha, TruncationDim dim) {
    check_displacement_bound(alpha, dim, "displacement");
    auto [a, ad] = ladder_ops(dim);
    return op_exp(FockOperator(alpha * ad.m - std::conj(alpha) * a.m, dim));
}

Matrix displacement_elements(Complex gamma, int n) {
    Matrix d = Matrix::Zero(n, n);
    double x = std::norm(gamma);
    if (x == 0.0) return Matrix::Identity(n, n);
    double theta = std::arg(gamma);
    for (int k = 0; k < n; ++k) {
        double ln_l0 = -0.5 * x + 0.5 * k * std::log(x) - 0.5 * std::lgamma(double(k) + 1.0);
        double l_prev = (ln_l0 < -740.0) ? 0.0 : std::exp(ln_l0);
        double l_cur = l_prev;
        Complex ph = std::polar(1.0, k * theta);
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        for (int m = 0; m < n - k; ++m) {
            if (m == 1) {
                l_cur = (1.0 + k - x) / std::sqrt(1.0 * (1.0 + k)) * l_prev;
            } else if (m > 1) {
                int mm = m - 1;
                double l_next = (2.0 * mm + 1.0 + k - x) * l_cur
                                    / std::sqrt(double(mm + 1) * double(mm + 1 + k))
                                - std::sqrt(double(mm) * double(mm + k)
                                            / (double(mm + 1) * double(mm + 1 + k)))
                                      * l_prev;
                l_prev = l_cur;
                l_cur = l_next;
            }
            d(m + k, m) = ph * l_cur;
            if (k > 0) d(m, m + k) = sgn * std::conj(ph) * l_cur;
        }
    }
    return d;
}

Complex displacement_bilinear(const Vector& bra, const Vector& ket, Complex gamma) {
    if (bra.size() != ket.size())
        throw std::invalid_argument("displacement_bilinear: dimension mismatch");
    int n = int(bra.size());
    return displacement_diagonal_sum(
        n, gamma,
        [&](int k, int m) { return std::conj(bra(m + k)) * ket(m); },
        [&](int k, int m) { return std::conj(bra(m)) * ket(m + k); });
}

Complex displacement_trace(const Matrix& b, Complex gamma) {
    if (b.rows() != b.cols())
        throw std::invalid_argument("displacement_trace: matrix must be square");
    int n = int(b.rows());
    // Tr[B D] pairs B(m, m+k) with D(m+k, m) on the upper diagonals.
    return displacement_diagonal_sum(
        n, gamma,
        [&](int k, int m) { return b(m, m + k); },
        [&](int k, int m) { return b(m + k, m); });
}

FockOperator squeeze(const SqueezeParam& xi, TruncationDim dim) {
    if (xi.r > 1.5)
        throw std::invalid_argument("squeeze: r > 1.5 exceeds the supported range");
    auto [a, ad] = ladder_ops(dim);
    Complex z = xi.xi();
    Matrix gen = 0.5 * std::conj(z) * (a.m * a.m) - 0.5 * z * (ad.m * ad.m);
    return op_exp(FockOperator(std::move(gen), dim));
}

FockVector squeezed_vacuum(const SqueezeParam& xi, TruncationDim dim) {
    if (xi.r > 1.5)
        throw std::invalid_argument("squeezed_vacuum: r > 1.5 exceeds the supported range");
    int n = dim.single();
    Vector v = Vector::Zero(n);
    Complex factor = -std::polar(std::tanh(xi.r), xi.phi);
    Complex c = 1.0 / std::sqrt(std::cosh(xi.r));
    v(0) = c;
    for (int m = 0; 2 * m + 2 < n; ++m) {
        c *= factor * std::sqrt(double(2 * m + 1) * double(2 * m + 2)) / (2.0 * (m + 1));
        v(2 * m + 2) = c;
    }
    FockVector out(std::move(v), dim);
    check_state_tail(out.tail_mass(), "squeezed_vacuum");
    return out;
}

FockVector squeezed_coherent(Complex alpha, const SqueezeParam& xi, TruncationDim dim) {
    check_displacement_bound(alpha, dim, "squeezed_coherent");
    FockVector sv = squeezed_vacuum(xi, dim);
    FockOperator d = displacement(alpha, dim);
    FockVector out(d.m * sv.amps, dim);
    check_state_tail(out.tail_mass(), "squeezed_coherent");
    return out;
}

namespace {

// One block of the photon-number-difference decomposition of S_ab: indices
// (na, nb) with na - nb = d, na = max(d,0)+t.
struct DiffBlock {
    std::vector<int> idx;
    Matrix u;
};

std::vector<DiffBlock> two_mode_squeeze_blocks(const SqueezeParam& xi, int n) {
    Complex z = xi.xi();
    std::vector<DiffBlock> blocks;
    blocks.reserve(2 * n - 1);
    for (int d = -(n - 1); d < n; ++d) {
        int size = n - std::abs(d);
        DiffBlock blk;
        blk.idx.resize(size);
        Matrix gen = Matrix::Zero(size, size);
        for (int t = 0; t < size; ++t) {
            int na = std::max(d, 0) + t;
            int nb = na - d;
            blk.idx[t] = na * n + nb;
            if (t + 1 < size) {
                double c = std::sqrt(double(na + 1) * double(nb + 1));
                gen(t, t + 1) = std::conj(z) * c;
                gen(t + 1, t) = -z * c;
            }
        }
        blk.u = expm(gen);
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

std::vector<DiffBlock> beam_splitter_blocks(double tau, int n) {
    std::vector<DiffBlock> blocks;
    blocks.reserve(2 * n - 1);
    for (int total = 0; total <= 2 * (n - 1); ++total) {
        int na_lo = std::max(0, total - (n - 1));
        int na_hi = std::min(total, n - 1);
        int size = na_hi - na_lo + 1;
        DiffBlock blk;
        blk.idx.resize(size);
        Matrix gen = Matrix::Zero(size, size);
        for (int t = 0; t < size; ++t) {
            int na = na_lo + t;
            int nb = total - na;
            blk.idx[t] = na * n + nb;
            if (t + 1 < size) {
                // couples (na, nb) <-> (na+1, nb-1)
                double c = tau * std::sqrt(double(na + 1) * double(nb));
                gen(t + 1, t) = c;
                gen(t, t + 1) = -c;
            }
        }
        blk.u = expm(gen);
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

Vector apply_blocks(const std::vector<DiffBlock>& blocks, const Vector& v) {
    Vector out = Vector::Zero(v.size());
    Vector tmp;
    for (const auto& blk : blocks) {
        int size = int(blk.idx.size());
        tmp.resize(size);
        for (int t = 0; t < size; ++t) tmp(t) = v(blk.idx[t]);
        tmp = blk.u * tmp;
        for (int t = 0; t < size; ++t) out(blk.idx[t]) = tmp(t);
    }
    return out;
}

Matrix assemble_blocks(const std::vector<DiffBlock>& blocks, int dim2) {
    Matrix out = Matrix::Zero(dim2, dim2);
    for (const auto& blk : blocks) {
        int size = int(blk.idx.size());
        for (int t = 0; t < size; ++t)
            for (int u = 0; u < size; ++u)
                out(blk.idx[t], blk.idx[u]) = blk.u(t, u);
    }
    return out;
}

// diag over (na, nb) of e^{i delta (na - nb)}: the local phase rotations that
// dress the real-angle splitter into the general scattering matrix.
Vector mode_phase_diagonal(double delta, int n) {
    Vector d(n * n);
    for (int na = 0; na < n; ++na)
        for (int nb = 0; nb < n; ++nb)
            d(na * n + nb) = std::polar(1.0, delta * double(na - nb));
    return d;
}

} // namespace

FockOperator two_mode_squeeze(const SqueezeParam& xi, TruncationDim dim) {
    if (xi.r > 1.2)
        throw std::invalid_argument("two_mode_squeeze: r > 1.2 exceeds the supported range");
    auto blocks = two_mode_squeeze_blocks(xi, dim.single());
    return FockOperator(assemble_blocks(blocks, dim.two_mode()), dim);
}

TwoModeVector apply_two_mode_squeeze(const SqueezeParam& xi, const TwoModeVector& v) {
    if (xi.r > 1.2)
        throw std::invalid_argument("apply_two_mode_squeeze: r > 1.2 exceeds the supported range");
    auto blocks = two_mode_squeeze_blocks(xi, v.dim.single());
    return TwoModeVector(apply_blocks(blocks, v.amps), v.dim);
}

TwoModeVector tmsv(const SqueezeParam& xi, TruncationDim dim) {
    if (xi.r > 1.2)
        throw std::invalid_argument("tmsv: r > 1.2 exceeds the supported range");
    int n = dim.single();
    Vector v = Vector::Zero(dim.two_mode());
    Complex factor = -std::polar(std::tanh(xi.r), xi.phi);
    Complex c = 1.0 / std::cosh(xi.r);
    for (int k = 0; k < n; ++k) {
        v(k * n + k) = c;
        c *= factor;
    }
    TwoModeVector out(std::move(v), dim);
    check_state_tail(out.tail_mass(), "tmsv");
    return out;
}

FockOperator beam_splitter(const BeamSplitterParam& p, TruncationDim dim) {
    int n = dim.single();
    auto blocks = beam_splitter_blocks(p.tau, n);
    Matrix u0 = assemble_blocks(blocks, dim.two_mode());
    double d1 = 0.5 * (p.phi_tau + p.phi_rho);
    double d2 = 0.5 * (p.phi_tau - p.phi_rho);
    if (d1 == 0.0 && d2 == 0.0) return FockOperator(std::move(u0), dim);
    Vector ph1 = mode_phase_diagonal(d1, n);
    Vector ph2 = mode_phase_diagonal(d2, n);
    return FockOperator(ph1.asDiagonal() * u0 * ph2.asDiagonal(), dim);
}

TwoModeVector apply_beam_splitter(const BeamSplitterParam& p, const TwoModeVector& v) {
    int n = v.dim.single();
    double d1 = 0.5 * (p.phi_tau + p.phi_rho);
    double d2 = 0.5 * (p.phi_tau - p.phi_rho);
    Vector amps = v.amps;
    if (d2 != 0.0) amps = mode_phase_diagonal(d2, n).cwiseProduct(amps);
    auto blocks = beam_splitter_blocks(p.tau, n);
    amps = apply_blocks(blocks, amps);
    if (d1 != 0.0) amps = mode_phase_diagonal(d1, n).cwiseProduct(amps);
    return TwoModeVector(std::move(amps), v.dim);
}

PhotonSubtraction photon_subtract(const FockVector& state, int k) {
    if (k < 1) throw std::invalid_argument("photon_subtract: k must be >= 1");
    int n = state.dim.single();
    Vector v = state.amps;
    for (int pass = 0; pass < k; ++pass) {
        Vector next = Vector::Zero(n);
        for (int m = 1; m < n; ++m) next(m - 1) = std::sqrt(double(m)) * v(m);
        v = std::move(next);
    }
    double w = v.squaredNorm();
    return PhotonSubtraction{FockVector(std::move(v), state.dim), w, w <= 1e-30};
}

} // namespace ngforge
