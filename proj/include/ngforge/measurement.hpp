// Postselected von Neumann measurement: qubit pre/post-selection, weak
// values, the exact displacement-superposition channel, the full-evolution
// oracle and closed-form success probabilities.
#pragma once

#include <optional>

#include "ngforge/fock.hpp"

namespace ngforge {

/// Two-level system state c_H |H> + c_V |V>, normalized to 1e-12.
struct QubitState {
    Complex c_h;
    Complex c_v;

    QubitState(Complex h, Complex v);
    static QubitState horizontal() { return {1.0, 0.0}; }
    static QubitState vertical() { return {0.0, 1.0}; }
    /// cos(theta/2)|H> + e^{i delta} sin(theta/2)|V>
    static QubitState from_angles(double theta, double delta);
    QubitState orthogonal() const { return {-std::conj(c_v), std::conj(c_h)}; }
    Eigen::Vector2cd vec() const { return {c_h, c_v}; }
};

/// 2x2 Hermitian observable with A^2 = I (within 1e-10); rejected otherwise.
struct Observable {
    Eigen::Matrix2cd m;

    explicit Observable(const Eigen::Matrix2cd& mat);
    static Observable sigma_x();
    static Observable sigma_z();
    /// n . sigma for a unit Bloch vector.
    static Observable bloch(double nx, double ny, double nz);
};

/// Pre/post-selected qubit states plus the measured observable. Postselection
/// must not be orthogonal to the preparation (|<f|i>| > 1e-12).
struct SelectionPair {
    QubitState psi_i;
    QubitState psi_f;
    Observable a;

    SelectionPair(QubitState i, QubitState f, Observable obs);
    Complex overlap() const;  // <psi_f | psi_i>
};

struct WeakValue {
    Complex value;
    Complex t_plus() const { return 1.0 + value; }
    Complex t_minus() const { return 1.0 - value; }
};

/// <psi_f|A|psi_i> / <psi_f|psi_i>
WeakValue weak_value(const SelectionPair& sel);

/// The sigma_x configuration: psi_i = cos(theta/2)|H> + e^{i delta}
/// sin(theta/2)|V>, psi_f = |H>. Weak value e^{i delta} tan(theta/2),
/// selection overlap cos(theta/2). Requires theta in [0, pi).
SelectionPair sigma_x_selection(double theta, double delta);

/// Interaction strength s = g/(2 sigma). The (g, sigma) pair is only needed
/// by the full-evolution oracle and by the X-quadrature channel.
struct CouplingSpec {
    double s;
    Quadrature quadrature = Quadrature::P;
    std::optional<double> g;
    std::optional<double> sigma;

    static CouplingSpec strength(double s);
    static CouplingSpec from_g_sigma(double g, double sigma, Quadrature q = Quadrature::P);
};

struct ChannelResult {
    FockVector state;  // normalized
    double p;          // successful-postselection probability
};

struct TwoModeChannelResult {
    TwoModeVector state;
    double p;
};

/// Exact postselected channel: state ~ [t+ D(d+) + t- D(d-)] |pointer> with
/// d+- = +-s for quadrature P and -+ i g sigma for quadrature X;
/// p = || (overlap/2) [t+ D(d+) + t- D(d-)] |pointer> ||^2.
ChannelResult postselect_channel(const FockVector& pointer, const WeakValue& wv,
                                 Complex overlap, const CouplingSpec& coupling);
ChannelResult postselect_channel(const FockVector& pointer, const SelectionPair& sel,
                                 const CouplingSpec& coupling);

/// Same channel with the displacement acting on one mode only.
TwoModeChannelResult postselect_channel_two_mode(const TwoModeVector& pointer,
                                                 const WeakValue& wv, Complex overlap,
                                                 const CouplingSpec& coupling,
                                                 Mode measured);

/// exp(-i g A (x) Q) on the 2 n_max composite space, via op_exp.
Matrix interaction_unitary_exp(const Observable& a, double g, Quadrature q,
                               double sigma, TruncationDim dim);
/// The same unitary assembled from the A^2 = I identity:
/// (1/2)[(1+A)(x)e^{-igQ} + (1-A)(x)e^{+igQ}].
Matrix interaction_unitary_closed(const Observable& a, double g, Quadrature q,
                                  double sigma, TruncationDim dim);

/// Full composite evolution followed by projection on <psi_f|. The oracle
/// against which postselect_channel is differential-tested.
struct FullEvolutionResult {
    FockVector projected;  // unnormalized
    double p;
    double boundary_leakage;
    FockVector normalized() const { return FockVector(projected.amps / std::sqrt(p), projected.dim); }
};
FullEvolutionResult evolve_full(const SelectionPair& sel, const FockVector& pointer,
                                const CouplingSpec& coupling);

/// p = (1/2)(1 + e^{-2 s^2 e^{2r}} cos theta) for the sigma_x selection with
/// a vacuum (r = 0) or squeezed-vacuum pointer. delta provably drops out of
/// the norm; the parameter is kept to mirror the selection parameterization.
double success_probability_closed(double theta, double delta, double s, double r = 0.0);

} // namespace ngforge
