// Named constructors for the state families the measurement channel can
// prepare, each with a pipeline route (input -> channel -> optional beam
// splitter, the ground truth) and an analytic coefficient route used for
// cross-validation.
#pragma once

#include <optional>
#include <variant>

#include "ngforge/gaussian.hpp"
#include "ngforge/measurement.hpp"

namespace ngforge {

enum class Family {
    Psi1, Psi2, Psi3, Psi4,
    EvenCat, OddCatLike, YurkeStoler,
    Phi1, Phi2, Phi1Prime, Phi2Prime,
    Phi3, Phi4,
};
enum class BellVariant { Phi3, Phi4 };

/// Postselection probability of the sigma_x configuration realizing a given
/// weak value: overlap cos(theta/2) with tan(theta/2) = |wv|.
Complex selection_overlap_for(const WeakValue& wv);

// -- single-mode families ------------------------------------------------------

struct SingleModeResult {
    FockVector state;
    double p;
};

/// Squeezed-coherent input. Pipeline route; ground truth for the family.
FockVector psi1(Complex alpha, const SqueezeParam& xi, double s, const WeakValue& wv,
                TruncationDim dim);
SingleModeResult psi1_full(Complex alpha, const SqueezeParam& xi, double s,
                           const WeakValue& wv, TruncationDim dim);
/// Analytic route: the channel braided through the squeezer, i.e.
/// S(xi) [t+ e^{-2 i s Im alpha} |a'+s'> + t- |a'-s'>] normalized numerically.
FockVector psi1_analytic(Complex alpha, const SqueezeParam& xi, double s,
                         const WeakValue& wv, TruncationDim dim);
/// (alpha', s'): displacement labels after conjugation through S(xi);
/// a' = a cosh r + conj(a) e^{i phi} sinh r, s' = s (cosh r + e^{i phi} sinh r).
std::pair<Complex, Complex> braided_labels(Complex alpha, const SqueezeParam& xi, double s);

/// Squeezed-vacuum input (phi = 0 family), the squeezed-cat generator.
FockVector psi2_squeezed_cat(double r, double s, const WeakValue& wv, TruncationDim dim);
SingleModeResult psi2_full(double r, double s, const WeakValue& wv, TruncationDim dim);
FockVector psi2_analytic(double r, double s, const WeakValue& wv, TruncationDim dim);
/// Closed-form norm factor: eta^-2 = 2[(1+E) + |wv|^2 (1-E)], E = e^{-2 s^2 e^{2r}}.
double eta_closed(double r, double s, const WeakValue& wv);

/// Coherent input, displaced-cat family.
FockVector psi3_displaced_cat(Complex alpha, double s, const WeakValue& wv, TruncationDim dim);
SingleModeResult psi3_full(Complex alpha, double s, const WeakValue& wv, TruncationDim dim);
FockVector psi3_analytic(Complex alpha, double s, const WeakValue& wv, TruncationDim dim);
/// gamma^-2 = 2[(1+E) + |wv|^2 (1-E)], E = e^{-2 s^2}; exact for real alpha.
double gamma_closed(double s, const WeakValue& wv);

/// Vacuum input: t+|s> + t-|-s> up to normalization.
FockVector psi4_vacuum_cat(double s, const WeakValue& wv, TruncationDim dim);
SingleModeResult psi4_full(double s, const WeakValue& wv, TruncationDim dim);
FockVector psi4_analytic(double s, const WeakValue& wv, TruncationDim dim);

/// Reference cats: N(|s> + |-s>), N(|s> - |-s>), (|s> + i|-s>)/sqrt2.
FockVector ideal_even_cat(double s, TruncationDim dim);
FockVector ideal_odd_cat(double s, TruncationDim dim);
FockVector yurke_stoler_cat(double s, TruncationDim dim);

// -- two-mode families ---------------------------------------------------------

struct TwoModeResult {
    TwoModeVector state;
    double p;
};

/// Separable squeezed-vacuum inputs (|xi>|-xi> or |-xi>|xi> per measured
/// mode), channel on one mode, balanced beam splitter. Pipeline route.
TwoModeVector phi_two_mode_cat(const SqueezeParam& xi, double s, const WeakValue& wv,
                               Mode measured, TruncationDim dim);
TwoModeResult phi_full(const SqueezeParam& xi, double s, const WeakValue& wv,
                       Mode measured, TruncationDim dim);
/// Analytic route, phi = 0 only. Under this library's splitter convention the
/// two-mode squeeze prefactor carries -xi when mode a is measured and +xi
/// when mode b is measured (calibrated against the pipeline).
TwoModeVector phi_analytic(const SqueezeParam& xi, double s, const WeakValue& wv,
                           Mode measured, TruncationDim dim);
/// kappa = 1 / sqrt(2 (1 + e^{-2 s^2 e^{2r}})), the wv = 0 norm factor.
double kappa_closed(double r, double s);

/// Bell-like family: vacuum plus coherent |beta> inputs, channel on the
/// vacuum-side mode, balanced beam splitter. For real beta = s the closed
/// forms below apply; any other beta is pipeline-only.
TwoModeVector bell_like(double s, Complex beta, const WeakValue& wv, BellVariant variant,
                        TruncationDim dim);
TwoModeResult bell_full(double s, Complex beta, const WeakValue& wv, BellVariant variant,
                        TruncationDim dim);
/// Phi3: gamma [t+ |sqrt2 s, 0> + t- |0, sqrt2 s>];
/// Phi4: gamma [t+ |sqrt2 s, 0> + t- |0, -sqrt2 s>] (beta = s real).
TwoModeVector bell_analytic(double s, const WeakValue& wv, BellVariant variant,
                            TruncationDim dim);

/// Amplitudes of a Bell-like state in the per-mode Loewdin-orthogonalized
/// {|0>, |+-sqrt2 s>} qubit basis; residual is the weight outside that span.
struct BellProjection {
    Eigen::Matrix2cd amp;  // amp(i, j): mode-a basis index i, mode-b index j
    double residual;
};
BellProjection project_bell_qubits(const TwoModeVector& state, double s, BellVariant variant);

enum class BellTarget { Symmetric, Antisymmetric };
/// Fidelity against (|1,0> +- |0,1>)/sqrt2 in the orthogonalized qubit basis.
double bell_fidelity(const TwoModeVector& state, double s, BellVariant variant,
                     BellTarget target);

// -- generic runner --------------------------------------------------------------

/// One record per CLI request; family-specific parameter subsets are enforced
/// (EvenCat/YurkeStoler/PhiPrime force their weak value, Psi4 forbids alpha,
/// nonzero squeeze phase routes the Phi families to the pipeline only).
struct ProtocolSpec {
    Family family = Family::Psi4;
    Complex alpha = 0.0;
    double r = 0.0;
    double phi = 0.0;
    double s = 1.0;
    std::optional<Complex> wv;       // explicit weak value ...
    std::optional<double> theta;     // ... or the sigma_x angles
    std::optional<double> delta;
    std::optional<Complex> beta;     // Bell-family second input (defaults to s)
    Mode measured = Mode::a;
    std::optional<int> n_max;        // starting truncation (defaults otherwise)
    bool escalate = true;            // false pins n_max exactly
};

struct ProtocolOutput {
    std::variant<FockVector, TwoModeVector> state;
    double p;
    double tail;
    int n_max_used;
    bool pipeline_only;  // analytic closed forms do not cover this parameter point
    WeakValue wv;
};

ProtocolOutput run_protocol(const ProtocolSpec& spec);

/// Doubles n_max (from `start`, up to `cap`) until `build` stops throwing
/// TruncationError.
template <typename F>
auto escalate_truncation(F&& build, int start, int cap) {
    int n = start;
    for (;;) {
        try {
            return build(TruncationDim(n));
        } catch (const TruncationError&) {
            if (2 * n > cap) throw;
            n *= 2;
        }
    }
}

} // namespace ngforge
