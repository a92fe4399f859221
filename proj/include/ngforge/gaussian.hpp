// Gaussian states and unitaries on truncated Fock spaces: displacement,
// single- and two-mode squeezing, beam splitter, photon subtraction. Each
// state constructor has an analytic amplitude path and a matrix path.
#pragma once

#include "ngforge/fock.hpp"

namespace ngforge {

/// xi = r e^{i phi}; r >= 0, phi wrapped into [0, 2pi).
struct SqueezeParam {
    double r;
    double phi;

    explicit SqueezeParam(double r_, double phi_ = 0.0);
    Complex xi() const { return std::polar(r, phi); }
    /// Parameter of the inverse-phase squeezer, -xi.
    SqueezeParam negated() const { return SqueezeParam(r, phi + M_PI); }
};

/// Scattering-matrix parameters; R = sin^2 tau and T = cos^2 tau sum to one.
struct BeamSplitterParam {
    double tau;
    double phi_tau = 0.0;
    double phi_rho = 0.0;

    static BeamSplitterParam balanced() { return {M_PI / 4.0, 0.0, 0.0}; }
    double reflectivity() const { return std::sin(tau) * std::sin(tau); }
    double transmittance() const { return std::cos(tau) * std::cos(tau); }
};

/// |alpha> with amplitudes e^{-|a|^2/2} a^n / sqrt(n!). The truncation guard
/// |a|^2 + 6|a| + 10 < n_max keeps the tail below ~1e-10.
FockVector coherent(Complex alpha, TruncationDim dim);

/// D(alpha) = exp(alpha a^dag - conj(alpha) a), built through op_exp.
FockOperator displacement(Complex alpha, TruncationDim dim);

/// Exact infinite-dimension matrix elements <m|D(gamma)|n> evaluated on the
/// truncated index range (normalized-Laguerre recurrence). Valid for any
/// |gamma|, unlike the truncated exponential.
Matrix displacement_elements(Complex gamma, int n);

/// <bra|D(gamma)|ket> using exact displacement elements; O(n^2), no
/// intermediate matrix.
Complex displacement_bilinear(const Vector& bra, const Vector& ket, Complex gamma);

/// Tr[B D(gamma)] with exact displacement elements.
Complex displacement_trace(const Matrix& b, Complex gamma);

/// S(xi) = exp[(conj(xi)/2) a^2 - (xi/2) a^dag^2]. Requires r <= 1.5.
FockOperator squeeze(const SqueezeParam& xi, TruncationDim dim);

/// S(xi)|0> by the even-amplitude closed form c_{2m}.
FockVector squeezed_vacuum(const SqueezeParam& xi, TruncationDim dim);

/// D(alpha) S(xi) |0>.
FockVector squeezed_coherent(Complex alpha, const SqueezeParam& xi, TruncationDim dim);

/// S_ab(xi) = exp(conj(xi) a b - xi a^dag b^dag). Requires r <= 1.2.
/// Built per photon-number-difference block; dense result.
FockOperator two_mode_squeeze(const SqueezeParam& xi, TruncationDim dim);

/// S_ab(xi)|v> without materializing the n^2 x n^2 operator.
TwoModeVector apply_two_mode_squeeze(const SqueezeParam& xi, const TwoModeVector& v);

/// Two-mode squeezed vacuum, amplitudes (-e^{i phi} tanh r)^n / cosh r on |n,n>.
TwoModeVector tmsv(const SqueezeParam& xi, TruncationDim dim);

/// Mode-operator convention: U^dag (a,b)^T U equals the scattering matrix
/// [[cos tau e^{i phi_tau}, sin tau e^{i phi_rho}],
///  [-sin tau e^{-i phi_rho}, cos tau e^{-i phi_tau}]] applied to (a,b)^T.
/// Coherent labels transform by the same matrix; for the balanced splitter
/// |alpha>|beta> -> |(alpha+beta)/sqrt2>|(-alpha+beta)/sqrt2>.
FockOperator beam_splitter(const BeamSplitterParam& p, TruncationDim dim);

/// U_BS |v> blockwise over total-photon-number subspaces.
TwoModeVector apply_beam_splitter(const BeamSplitterParam& p, const TwoModeVector& v);

/// a^k applied to a state, unnormalized. A vanishing result (e.g. k=1 on
/// vacuum) is flagged through `zero`, not thrown.
struct PhotonSubtraction {
    FockVector state;
    double weight;  // squared norm of the result
    bool zero;
};
PhotonSubtraction photon_subtract(const FockVector& state, int k);

} // namespace ngforge
