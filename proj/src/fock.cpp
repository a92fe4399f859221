#include "ngforge/fock.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace ngforge {

FockVector FockVector::normalized() const {
    double n = norm();
    if (n <= 0.0) throw std::invalid_argument("cannot normalize a zero vector");
    return FockVector(amps / n, dim);
}

double FockVector::tail_mass() const {
    int n = dim.single();
    int k = std::min(4, n);
    return amps.tail(k).squaredNorm();
}

TwoModeVector TwoModeVector::normalized() const {
    double n = norm();
    if (n <= 0.0) throw std::invalid_argument("cannot normalize a zero vector");
    return TwoModeVector(amps / n, dim);
}

double TwoModeVector::tail_mass() const {
    int n = dim.single();
    int k = std::min(4, n);
    auto c = coeffs();
    double t = c.bottomRows(k).squaredNorm() + c.rightCols(k).squaredNorm();
    // the corner block is counted twice
    t -= c.bottomRightCorner(k, k).squaredNorm();
    return t;
}

DensityMatrix::DensityMatrix(Matrix mat, TruncationDim d) : m(std::move(mat)), dim(d) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    if (m.rows() != d.single() && m.rows() != d.two_mode())
        throw std::invalid_argument("DensityMatrix: size is neither n_max nor n_max^2");
    if (std::abs(m.trace().real() - 1.0) > 1e-10 || std::abs(m.trace().imag()) > 1e-10)
        throw std::invalid_argument("DensityMatrix: trace must be 1");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("DensityMatrix: matrix must be Hermitian");
}

FockVector vacuum(TruncationDim dim) {
    Vector v = Vector::Zero(dim.single());
    v(0) = 1.0;
    return FockVector(std::move(v), dim);
}

FockVector fock_state(int n, TruncationDim dim) {
    if (n < 0 || n >= dim.single())
        throw std::invalid_argument("fock_state: level outside truncation");
    Vector v = Vector::Zero(dim.single());
    v(n) = 1.0;
    return FockVector(std::move(v), dim);
}

std::pair<FockOperator, FockOperator> ladder_ops(TruncationDim dim) {
    int n = dim.single();
    Matrix a = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(double(k));
    Matrix ad = a.adjoint();
    return {FockOperator(std::move(a), dim), FockOperator(std::move(ad), dim)};
}

FockOperator number_op(TruncationDim dim) {
    int n = dim.single();
    Matrix m = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = double(k);
    return FockOperator(std::move(m), dim);
}

FockOperator parity_op(TruncationDim dim) {
    int n = dim.single();
    Matrix m = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    return FockOperator(std::move(m), dim);
}

FockOperator quadrature_op(Quadrature kind, double sigma, TruncationDim dim) {
    if (!(sigma > 0.0)) throw std::invalid_argument("quadrature_op: sigma must be positive");
    auto [a, ad] = ladder_ops(dim);
    if (kind == Quadrature::X) return FockOperator(sigma * (a.m + ad.m), dim);
    return FockOperator(Complex(0.0, 1.0) / (2.0 * sigma) * (ad.m - a.m), dim);
}

TwoModeVector tensor(const FockVector& va, const FockVector& vb) {
    if (va.dim != vb.dim) throw std::invalid_argument("tensor: dimension mismatch");
    int n = va.dim.single();
    Vector out(n * n);
    for (int i = 0; i < n; ++i)
        out.segment(i * n, n) = va.amps(i) * vb.amps;
    return TwoModeVector(std::move(out), va.dim);
}

DensityMatrix outer(const FockVector& v) {
    return DensityMatrix(v.amps * v.amps.adjoint(), v.dim);
}

DensityMatrix outer(const TwoModeVector& v) {
    return DensityMatrix(v.amps * v.amps.adjoint(), v.dim);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep) {
    if (!rho.two_mode())
        throw std::invalid_argument("partial_trace: input must live on a two-mode space");
    int n = rho.dim.single();
    Matrix out = Matrix::Zero(n, n);
    if (keep == Mode::a) {
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j)
                    out(i, k) += rho.m(i * n + j, k * n + j);
    } else {
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                for (int i = 0; i < n; ++i)
                    out(j, l) += rho.m(i * n + j, i * n + l);
    }
    return DensityMatrix(std::move(out), rho.dim);
}

DensityMatrix reduced_density(const TwoModeVector& v, Mode keep) {
    auto c = v.coeffs();
    Matrix out;
    if (keep == Mode::a)
        out = c * c.adjoint();
    else
        out = c.transpose() * c.conjugate();
    return DensityMatrix(std::move(out), v.dim);
}

Complex inner(const FockVector& u, const FockVector& v) {
    if (u.dim != v.dim) throw std::invalid_argument("inner: dimension mismatch");
    return u.amps.dot(v.amps);
}

Complex inner(const TwoModeVector& u, const TwoModeVector& v) {
    if (u.dim != v.dim) throw std::invalid_argument("inner: dimension mismatch");
    return u.amps.dot(v.amps);
}

namespace {
double fidelity_impl(const Vector& u, const Vector& v) {
    if (u.size() != v.size()) throw std::invalid_argument("fidelity: dimension mismatch");
    if (std::abs(u.squaredNorm() - 1.0) > 1e-8 || std::abs(v.squaredNorm() - 1.0) > 1e-8)
        throw std::invalid_argument("fidelity: inputs must be normalized");
    return std::norm(u.dot(v));
}
} // namespace

double fidelity(const FockVector& u, const FockVector& v) {
    return fidelity_impl(u.amps, v.amps);
}

double fidelity(const TwoModeVector& u, const TwoModeVector& v) {
    return fidelity_impl(u.amps, v.amps);
}

Matrix expm(const Matrix& m) {
    if (!m.allFinite()) throw std::invalid_argument("expm: non-finite entries");
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    double herm_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    double anti_defect = (m + m.adjoint()).cwiseAbs().maxCoeff();
    const double tol = 1e-13 * scale;
    if (herm_defect <= tol) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m);
        Vector ev = es.eigenvalues().array().exp().cast<Complex>();
        return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    }
    if (anti_defect <= tol) {
        // m = iH with H Hermitian; exp(m) = V exp(i lambda) V^dag
        Matrix h = Complex(0.0, -1.0) * m;
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        Vector ev(m.rows());
        for (int k = 0; k < m.rows(); ++k)
            ev(k) = std::exp(Complex(0.0, es.eigenvalues()(k)));
        return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    }
    return m.exp();
}

FockOperator op_exp(const FockOperator& op) {
    return FockOperator(expm(op.m), op.dim);
}

} // namespace ngforge
