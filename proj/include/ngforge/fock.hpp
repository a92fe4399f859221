// Dense complex linear algebra over truncated Fock spaces: states, operators,
// tensor products, partial traces, fidelities and a matrix-exponential core.
#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "ngforge/errors.hpp"

namespace ngforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;

enum class Mode { a, b };
enum class Quadrature { X, P };

/// Truncation |0>..|n_max-1> of a single bosonic mode. Two-mode spaces have
/// dimension n_max^2 with mode a as the outer (row-major) index.
struct TruncationDim {
    int n_max;

    explicit TruncationDim(int n) : n_max(n) {
        if (n < 2) throw std::invalid_argument("TruncationDim: n_max must be >= 2");
    }
    int single() const { return n_max; }
    int two_mode() const { return n_max * n_max; }
    int index(int na, int nb) const { return na * n_max + nb; }
    bool operator==(const TruncationDim& o) const { return n_max == o.n_max; }
    bool operator!=(const TruncationDim& o) const { return n_max != o.n_max; }
};

inline constexpr int kDefaultSingleModeDim = 64;
inline constexpr int kDefaultTwoModeDim = 40;  // per mode
inline constexpr double kTailTolerance = 1e-10;

/// Single-mode pointer state: complex amplitudes over |0>..|n_max-1>.
struct FockVector {
    Vector amps;
    TruncationDim dim;

    FockVector(Vector v, TruncationDim d) : amps(std::move(v)), dim(d) {
        if (amps.size() != d.single())
            throw std::invalid_argument("FockVector: amplitude length != n_max");
    }
    double norm() const { return amps.norm(); }
    double norm_sq() const { return amps.squaredNorm(); }
    bool is_normalized(double tol = 1e-12) const {
        return std::abs(norm_sq() - 1.0) <= tol;
    }
    FockVector normalized() const;
    /// Mass in the top four Fock levels; the truncation health metric.
    double tail_mass() const;
};

/// Two-mode state on the n_max^2 product basis, index (na, nb) -> na*n_max+nb.
struct TwoModeVector {
    Vector amps;
    TruncationDim dim;

    TwoModeVector(Vector v, TruncationDim d) : amps(std::move(v)), dim(d) {
        if (amps.size() != d.two_mode())
            throw std::invalid_argument("TwoModeVector: amplitude length != n_max^2");
    }
    Complex& at(int na, int nb) { return amps(dim.index(na, nb)); }
    Complex at(int na, int nb) const { return amps(dim.index(na, nb)); }
    double norm() const { return amps.norm(); }
    double norm_sq() const { return amps.squaredNorm(); }
    bool is_normalized(double tol = 1e-12) const {
        return std::abs(norm_sq() - 1.0) <= tol;
    }
    TwoModeVector normalized() const;
    /// Coefficient matrix view C(na, nb); rows are mode a.
    Eigen::Map<const RowMatrix> coeffs() const {
        return Eigen::Map<const RowMatrix>(amps.data(), dim.single(), dim.single());
    }
    /// Mass with either mode in its top four levels.
    double tail_mass() const;
};

/// Dense operator on a single-mode (n) or two-mode (n^2) truncated space.
struct FockOperator {
    Matrix m;
    TruncationDim dim;

    FockOperator(Matrix mat, TruncationDim d) : m(std::move(mat)), dim(d) {
        if (m.rows() != m.cols())
            throw std::invalid_argument("FockOperator: matrix must be square");
        if (m.rows() != d.single() && m.rows() != d.two_mode())
            throw std::invalid_argument("FockOperator: size is neither n_max nor n_max^2");
    }
    bool two_mode() const { return m.rows() == dim.two_mode(); }
};

/// Hermitian trace-one matrix on a single- or two-mode space.
struct DensityMatrix {
    Matrix m;
    TruncationDim dim;

    DensityMatrix(Matrix mat, TruncationDim d);
    bool two_mode() const { return m.rows() == dim.two_mode(); }
    double trace() const { return m.trace().real(); }
    double purity() const { return (m * m).trace().real(); }
};

// -- state constructors ------------------------------------------------------

FockVector vacuum(TruncationDim dim);
FockVector fock_state(int n, TruncationDim dim);

// -- operators ---------------------------------------------------------------

/// (annihilation, creation): a|n> = sqrt(n)|n-1>, creation = a^dagger.
std::pair<FockOperator, FockOperator> ladder_ops(TruncationDim dim);
FockOperator number_op(TruncationDim dim);
/// diag((-1)^n)
FockOperator parity_op(TruncationDim dim);
/// X = sigma (a + a^dag), P = (i / 2 sigma)(a^dag - a). Requires sigma > 0.
FockOperator quadrature_op(Quadrature kind, double sigma, TruncationDim dim);

// -- products and reductions -------------------------------------------------

TwoModeVector tensor(const FockVector& va, const FockVector& vb);
DensityMatrix outer(const FockVector& v);
DensityMatrix outer(const TwoModeVector& v);
/// Trace out one mode of a two-mode density matrix.
DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep);
/// Reduced density matrix of a pure two-mode state (fast path, no n^2 x n^2
/// intermediate).
DensityMatrix reduced_density(const TwoModeVector& v, Mode keep);

// -- scalars -----------------------------------------------------------------

Complex inner(const FockVector& u, const FockVector& v);
Complex inner(const TwoModeVector& u, const TwoModeVector& v);
/// |<u|v>|^2 for normalized inputs; global-phase invariant.
double fidelity(const FockVector& u, const FockVector& v);
double fidelity(const TwoModeVector& u, const TwoModeVector& v);

// -- exponentials ------------------------------------------------------------

/// Matrix exponential. Hermitian and anti-Hermitian generators go through an
/// eigendecomposition; everything else through Pade scaling-and-squaring.
Matrix expm(const Matrix& m);
FockOperator op_exp(const FockOperator& op);

} // namespace ngforge
