#include "ngforge/protocols.hpp"

#include <cmath>

namespace ngforge {

namespace {

void check_tail(const FockVector& v, const char* who) {
    double t = v.tail_mass();
    if (t >= kTailTolerance) throw TruncationError(std::string(who) + ": truncation insufficient", t);
}

void check_tail(const TwoModeVector& v, const char* who) {
    double t = v.tail_mass();
    if (t >= kTailTolerance) throw TruncationError(std::string(who) + ": truncation insufficient", t);
}

} // namespace

Complex selection_overlap_for(const WeakValue& wv) {
    return 1.0 / std::sqrt(1.0 + std::norm(wv.value));
}

// -- psi1 ---------------------------------------------------------------------

std::pair<Complex, Complex> braided_labels(Complex alpha, const SqueezeParam& xi, double s) {
    double ch = std::cosh(xi.r), sh = std::sinh(xi.r);
    Complex eiphi = std::polar(1.0, xi.phi);
    Complex alpha_p = alpha * ch + std::conj(alpha) * eiphi * sh;
    Complex s_p = s * (ch + eiphi * sh);
    return {alpha_p, s_p};
}

SingleModeResult psi1_full(Complex alpha, const SqueezeParam& xi, double s,
                           const WeakValue& wv, TruncationDim dim) {
    FockVector input = squeezed_coherent(alpha, xi, dim);
    auto res = postselect_channel(input, wv, selection_overlap_for(wv), CouplingSpec::strength(s));
    check_tail(res.state, "psi1");
    return {res.state, res.p};
}

FockVector psi1(Complex alpha, const SqueezeParam& xi, double s, const WeakValue& wv,
                TruncationDim dim) {
    return psi1_full(alpha, xi, s, wv, dim).state;
}

FockVector psi1_analytic(Complex alpha, const SqueezeParam& xi, double s,
                         const WeakValue& wv, TruncationDim dim) {
    auto [alpha_p, s_p] = braided_labels(alpha, xi, s);
    // relative branch phase from commuting D(+-s) past D(alpha)
    Complex phase = std::polar(1.0, -2.0 * s * alpha.imag());
    Vector core = wv.t_plus() * phase * coherent(alpha_p + s_p, dim).amps
                  + wv.t_minus() * coherent(alpha_p - s_p, dim).amps;
    FockOperator sq = squeeze(xi, dim);
    Vector v = sq.m * core;
    FockVector out(v / v.norm(), dim);
    check_tail(out, "psi1_analytic");
    return out;
}

// -- psi2 ---------------------------------------------------------------------

SingleModeResult psi2_full(double r, double s, const WeakValue& wv, TruncationDim dim) {
    FockVector input = squeezed_vacuum(SqueezeParam(r), dim);
    auto res = postselect_channel(input, wv, selection_overlap_for(wv), CouplingSpec::strength(s));
    check_tail(res.state, "psi2");
    return {res.state, res.p};
}

FockVector psi2_squeezed_cat(double r, double s, const WeakValue& wv, TruncationDim dim) {
    return psi2_full(r, s, wv, dim).state;
}

FockVector psi2_analytic(double r, double s, const WeakValue& wv, TruncationDim dim) {
    double sp = s * std::exp(r);
    Vector core = wv.t_plus() * coherent(sp, dim).amps + wv.t_minus() * coherent(-sp, dim).amps;
    FockOperator sq = squeeze(SqueezeParam(r), dim);
    Vector v = sq.m * core;
    FockVector out(v / v.norm(), dim);
    check_tail(out, "psi2_analytic");
    return out;
}

double eta_closed(double r, double s, const WeakValue& wv) {
    double e = std::exp(-2.0 * s * s * std::exp(2.0 * r));
    double inv_sq = 2.0 * ((1.0 + e) + std::norm(wv.value) * (1.0 - e));
    return 1.0 / std::sqrt(inv_sq);
}

// -- psi3 / psi4 ----------------------------------------------------------------

SingleModeResult psi3_full(Complex alpha, double s, const WeakValue& wv, TruncationDim dim) {
    FockVector input = coherent(alpha, dim);
    auto res = postselect_channel(input, wv, selection_overlap_for(wv), CouplingSpec::strength(s));
    check_tail(res.state, "psi3");
    return {res.state, res.p};
}

FockVector psi3_displaced_cat(Complex alpha, double s, const WeakValue& wv, TruncationDim dim) {
    return psi3_full(alpha, s, wv, dim).state;
}

FockVector psi3_analytic(Complex alpha, double s, const WeakValue& wv, TruncationDim dim) {
    return psi1_analytic(alpha, SqueezeParam(0.0), s, wv, dim);
}

double gamma_closed(double s, const WeakValue& wv) {
    double e = std::exp(-2.0 * s * s);
    double inv_sq = 2.0 * ((1.0 + e) + std::norm(wv.value) * (1.0 - e));
    return 1.0 / std::sqrt(inv_sq);
}

SingleModeResult psi4_full(double s, const WeakValue& wv, TruncationDim dim) {
    return psi3_full(0.0, s, wv, dim);
}

FockVector psi4_vacuum_cat(double s, const WeakValue& wv, TruncationDim dim) {
    if (!(s >= 0.0)) throw std::invalid_argument("psi4_vacuum_cat: s must be >= 0");
    return psi4_full(s, wv, dim).state;
}

FockVector psi4_analytic(double s, const WeakValue& wv, TruncationDim dim) {
    return psi3_analytic(0.0, s, wv, dim);
}

namespace {
FockVector cat_superposition(double s, Complex c_plus, Complex c_minus, TruncationDim dim) {
    Vector v = c_plus * coherent(s, dim).amps + c_minus * coherent(-s, dim).amps;
    return FockVector(v / v.norm(), dim);
}
} // namespace

FockVector ideal_even_cat(double s, TruncationDim dim) {
    return cat_superposition(s, 1.0, 1.0, dim);
}

FockVector ideal_odd_cat(double s, TruncationDim dim) {
    return cat_superposition(s, 1.0, -1.0, dim);
}

FockVector yurke_stoler_cat(double s, TruncationDim dim) {
    return cat_superposition(s, 1.0, Complex(0.0, 1.0), dim);
}

// -- phi families ------------------------------------------------------------------

TwoModeResult phi_full(const SqueezeParam& xi, double s, const WeakValue& wv,
                       Mode measured, TruncationDim dim) {
    FockVector plus = squeezed_vacuum(xi, dim);
    FockVector minus = squeezed_vacuum(xi.negated(), dim);
    TwoModeVector input = (measured == Mode::a) ? tensor(plus, minus) : tensor(minus, plus);
    auto res = postselect_channel_two_mode(input, wv, selection_overlap_for(wv),
                                           CouplingSpec::strength(s), measured);
    TwoModeVector out = apply_beam_splitter(BeamSplitterParam::balanced(), res.state);
    check_tail(out, "phi");
    return {std::move(out), res.p};
}

TwoModeVector phi_two_mode_cat(const SqueezeParam& xi, double s, const WeakValue& wv,
                               Mode measured, TruncationDim dim) {
    return phi_full(xi, s, wv, measured, dim).state;
}

TwoModeVector phi_analytic(const SqueezeParam& xi, double s, const WeakValue& wv,
                           Mode measured, TruncationDim dim) {
    if (xi.phi != 0.0)
        throw std::invalid_argument("phi_analytic: closed form requires phi = 0");
    double x = s * std::exp(xi.r) / std::sqrt(2.0);
    Vector pos = coherent(x, dim).amps, neg = coherent(-x, dim).amps;
    int n = dim.single();
    Vector core(n * n);
    auto kron_into = [&](const Vector& u, const Vector& v, Complex w, bool first) {
        for (int i = 0; i < n; ++i) {
            if (first)
                core.segment(i * n, n) = w * u(i) * v;
            else
                core.segment(i * n, n) += w * u(i) * v;
        }
    };
    if (measured == Mode::a) {
        kron_into(pos, neg, wv.t_plus(), true);
        kron_into(neg, pos, wv.t_minus(), false);
    } else {
        kron_into(pos, pos, wv.t_plus(), true);
        kron_into(neg, neg, wv.t_minus(), false);
    }
    SqueezeParam sab = (measured == Mode::a) ? xi.negated() : xi;
    TwoModeVector out = apply_two_mode_squeeze(sab, TwoModeVector(std::move(core), dim));
    TwoModeVector norm = out.normalized();
    check_tail(norm, "phi_analytic");
    return norm;
}

double kappa_closed(double r, double s) {
    return 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0 * s * s * std::exp(2.0 * r))));
}

// -- Bell-like families ---------------------------------------------------------------

TwoModeResult bell_full(double s, Complex beta, const WeakValue& wv, BellVariant variant,
                        TruncationDim dim) {
    FockVector vac = vacuum(dim);
    FockVector coh = coherent(beta, dim);
    TwoModeVector input =
        (variant == BellVariant::Phi3) ? tensor(vac, coh) : tensor(coh, vac);
    Mode measured = (variant == BellVariant::Phi3) ? Mode::a : Mode::b;
    auto res = postselect_channel_two_mode(input, wv, selection_overlap_for(wv),
                                           CouplingSpec::strength(s), measured);
    TwoModeVector out = apply_beam_splitter(BeamSplitterParam::balanced(), res.state);
    check_tail(out, "bell_like");
    return {std::move(out), res.p};
}

TwoModeVector bell_like(double s, Complex beta, const WeakValue& wv, BellVariant variant,
                        TruncationDim dim) {
    return bell_full(s, beta, wv, variant, dim).state;
}

TwoModeVector bell_analytic(double s, const WeakValue& wv, BellVariant variant,
                            TruncationDim dim) {
    double amp = std::sqrt(2.0) * s;
    FockVector vac = vacuum(dim);
    FockVector big = coherent(amp, dim);
    FockVector small = (variant == BellVariant::Phi3) ? big : coherent(-amp, dim);
    Vector v = wv.t_plus() * tensor(big, vac).amps + wv.t_minus() * tensor(vac, small).amps;
    TwoModeVector out = TwoModeVector(std::move(v), dim).normalized();
    check_tail(out, "bell_analytic");
    return out;
}

namespace {
// Loewdin symmetric orthogonalization of {|0>, |c>} with real overlap.
std::pair<Vector, Vector> loewdin_pair(Complex c_amp, TruncationDim dim) {
    Vector e0 = vacuum(dim).amps;
    Vector e1 = coherent(c_amp, dim).amps;
    double ov = e0.dot(e1).real();  // e^{-|c|^2/2}, real positive
    if (ov > 1.0 - 1e-12)
        throw std::invalid_argument("bell basis degenerate: component amplitude too small");
    double ap = 1.0 / std::sqrt(1.0 + ov);
    double am = 1.0 / std::sqrt(1.0 - ov);
    Vector f0 = 0.5 * ((ap + am) * e0 + (ap - am) * e1);
    Vector f1 = 0.5 * ((ap - am) * e0 + (ap + am) * e1);
    return {std::move(f0), std::move(f1)};
}
} // namespace

BellProjection project_bell_qubits(const TwoModeVector& state, double s, BellVariant variant) {
    double amp = std::sqrt(2.0) * s;
    auto [a0, a1] = loewdin_pair(amp, state.dim);
    auto [b0, b1] = loewdin_pair(variant == BellVariant::Phi3 ? amp : -amp, state.dim);
    auto c = state.coeffs();
    BellProjection out;
    const Vector* abasis[2] = {&a0, &a1};
    const Vector* bbasis[2] = {&b0, &b1};
    for (int j = 0; j < 2; ++j) {
        Vector col = c * bbasis[j]->conjugate();
        for (int i = 0; i < 2; ++i)
            out.amp(i, j) = abasis[i]->dot(col);
    }
    out.residual = 1.0 - out.amp.squaredNorm();
    return out;
}

double bell_fidelity(const TwoModeVector& state, double s, BellVariant variant,
                     BellTarget target) {
    BellProjection proj = project_bell_qubits(state, s, variant);
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd tgt = Eigen::Matrix2cd::Zero();
    tgt(1, 0) = inv_sqrt2;
    tgt(0, 1) = (target == BellTarget::Symmetric) ? inv_sqrt2 : -inv_sqrt2;
    Complex ovl = (tgt.conjugate().array() * proj.amp.array()).sum();
    return std::norm(ovl);
}

// -- runner -------------------------------------------------------------------------

namespace {

WeakValue resolve_wv(const ProtocolSpec& spec) {
    if (spec.wv && (spec.theta || spec.delta))
        throw std::invalid_argument("protocol: give either an explicit weak value or (theta, delta), not both");
    if (spec.wv) return WeakValue{*spec.wv};
    if (spec.theta) {
        double delta = spec.delta.value_or(0.0);
        return weak_value(sigma_x_selection(*spec.theta, delta));
    }
    throw std::invalid_argument("protocol: weak value unspecified");
}

void forbid(bool cond, const char* msg) {
    if (cond) throw std::invalid_argument(msg);
}

} // namespace

ProtocolOutput run_protocol(const ProtocolSpec& spec) {
    const bool two_mode = spec.family == Family::Phi1 || spec.family == Family::Phi2
                          || spec.family == Family::Phi1Prime || spec.family == Family::Phi2Prime
                          || spec.family == Family::Phi3 || spec.family == Family::Phi4;
    int start = spec.n_max.value_or(two_mode ? kDefaultTwoModeDim : kDefaultSingleModeDim);
    int cap = spec.escalate ? std::max(start, two_mode ? 160 : 512) : start;

    WeakValue wv{0.0};
    switch (spec.family) {
        case Family::EvenCat:
            forbid(spec.wv || spec.theta, "even cat: weak value is fixed at 0");
            wv = WeakValue{0.0};
            break;
        case Family::YurkeStoler:
            forbid(spec.wv || spec.theta, "Yurke-Stoler: weak value is fixed at -i");
            wv = WeakValue{Complex(0.0, -1.0)};
            break;
        case Family::Phi1Prime:
        case Family::Phi2Prime:
            forbid(spec.wv || spec.theta, "twin-cat special case: weak value is fixed at 0");
            wv = WeakValue{0.0};
            break;
        default:
            wv = resolve_wv(spec);
    }

    bool pipeline_only = false;
    ProtocolOutput out{vacuum(TruncationDim(2)), 0.0, 0.0, 0, false, wv};

    auto fill_single = [&](const SingleModeResult& r, TruncationDim dim) {
        out.state = r.state;
        out.p = r.p;
        out.tail = r.state.tail_mass();
        out.n_max_used = dim.single();
    };
    auto fill_two = [&](const TwoModeResult& r, TruncationDim dim) {
        out.state = r.state;
        out.p = r.p;
        out.tail = r.state.tail_mass();
        out.n_max_used = dim.single();
    };

    switch (spec.family) {
        case Family::Psi1:
            escalate_truncation(
                [&](TruncationDim dim) {
                    fill_single(psi1_full(spec.alpha, SqueezeParam(spec.r, spec.phi), spec.s, wv, dim), dim);
                    return 0;
                },
                start, cap);
            break;
        case Family::Psi2:
            forbid(spec.alpha != 0.0, "psi2: alpha must be zero (squeezed-vacuum input)");
            forbid(spec.phi != 0.0, "psi2: phi must be zero");
            escalate_truncation(
                [&](TruncationDim dim) {
                    fill_single(psi2_full(spec.r, spec.s, wv, dim), dim);
                    return 0;
                },
                start, cap);
            break;
        case Family::Psi3:
            forbid(spec.r != 0.0, "psi3: squeezing must be zero (coherent input)");
            escalate_truncation(
                [&](TruncationDim dim) {
                    fill_single(psi3_full(spec.alpha, spec.s, wv, dim), dim);
                    return 0;
                },
                start, cap);
            break;
        case Family::Psi4:
        case Family::EvenCat:
        case Family::OddCatLike:
        case Family::YurkeStoler:
            forbid(spec.alpha != 0.0, "psi4 family: alpha must be zero (vacuum input)");
            forbid(spec.r != 0.0, "psi4 family: squeezing must be zero (vacuum input)");
            if (spec.family == Family::OddCatLike && std::abs(wv.value) <= 1.0)
                throw std::invalid_argument("odd-cat-like: requires |wv| > 1");
            escalate_truncation(
                [&](TruncationDim dim) {
                    fill_single(psi4_full(spec.s, wv, dim), dim);
                    return 0;
                },
                start, cap);
            break;
        case Family::Phi1:
        case Family::Phi2:
        case Family::Phi1Prime:
        case Family::Phi2Prime: {
            forbid(spec.alpha != 0.0, "phi family: alpha must be zero (squeezed-vacuum inputs)");
            Mode measured = (spec.family == Family::Phi1 || spec.family == Family::Phi1Prime)
                                ? Mode::a
                                : Mode::b;
            pipeline_only = spec.phi != 0.0;
            escalate_truncation(
                [&](TruncationDim dim) {
                    fill_two(phi_full(SqueezeParam(spec.r, spec.phi), spec.s, wv, measured, dim), dim);
                    return 0;
                },
                start, cap);
            break;
        }
        case Family::Phi3:
        case Family::Phi4: {
            forbid(spec.r != 0.0, "bell family: squeezing must be zero");
            Complex beta = spec.beta.value_or(Complex(spec.s, 0.0));
            pipeline_only = !(beta.imag() == 0.0 && beta.real() == spec.s);
            BellVariant variant =
                (spec.family == Family::Phi3) ? BellVariant::Phi3 : BellVariant::Phi4;
            escalate_truncation(
                [&](TruncationDim dim) {
                    fill_two(bell_full(spec.s, beta, wv, variant, dim), dim);
                    return 0;
                },
                start, cap);
            break;
        }
    }
    out.pipeline_only = pipeline_only;
    return out;
}

} // namespace ngforge
