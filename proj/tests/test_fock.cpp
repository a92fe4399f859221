#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ngforge/fock.hpp"
#include "ngforge/gaussian.hpp"

using namespace ngforge;

TEST_CASE("vacuum and basis states") {
    TruncationDim dim(4);
    FockVector v = vacuum(dim);
    CHECK(v.amps(0) == Complex(1.0, 0.0));
    CHECK(v.amps.tail(3).cwiseAbs().maxCoeff() == 0.0);
    CHECK(vacuum(TruncationDim(64)).norm() == doctest::Approx(1.0).epsilon(1e-14));

    auto n_op = number_op(TruncationDim(64));
    Vector nv = n_op.m * vacuum(TruncationDim(64)).amps;
    CHECK(nv.norm() == 0.0);

    CHECK_THROWS_AS(TruncationDim(1), std::invalid_argument);
    CHECK_THROWS_AS(fock_state(4, dim), std::invalid_argument);
}

TEST_CASE("ladder operators act as sqrt(n) shifts") {
    TruncationDim dim(16);
    auto [a, ad] = ladder_ops(dim);
    Vector one = fock_state(1, dim).amps;
    Vector lowered = a.m * one;
    CHECK((lowered - vacuum(dim).amps).norm() == doctest::Approx(0.0).epsilon(1e-15));
    Vector raised = ad.m * one;
    CHECK(std::abs(raised(2) - std::sqrt(2.0)) < 1e-15);

    // [a, a^dag] = I away from the truncation boundary
    Matrix comm = a.m * ad.m - ad.m * a.m;
    int keep = dim.single() - 2;
    double worst =
        (comm.topLeftCorner(keep, keep) - Matrix::Identity(keep, keep)).cwiseAbs().maxCoeff();
    CHECK(worst <= 1e-12);
}

TEST_CASE("quadratures: moments and canonical commutator") {
    TruncationDim dim(32);
    double sigma = 0.5;
    Matrix x = quadrature_op(Quadrature::X, sigma, dim).m;
    Matrix p = quadrature_op(Quadrature::P, sigma, dim).m;
    Vector vac = vacuum(dim).amps;

    // <0|X^2|0> = sigma^2, <0|P^2|0> = 1/(4 sigma^2)
    CHECK(std::abs(vac.dot(x * (x * vac)) - 0.25) < 1e-13);
    CHECK(std::abs(vac.dot(p * (p * vac)) - 1.0) < 1e-13);

    Matrix comm = x * p - p * x;
    int keep = 16;
    double worst = (comm.topLeftCorner(keep, keep)
                    - Complex(0, 1) * Matrix::Identity(keep, keep))
                       .cwiseAbs()
                       .maxCoeff();
    CHECK(worst <= 1e-12);
    CHECK_THROWS_AS(quadrature_op(Quadrature::X, 0.0, dim), std::invalid_argument);
}

TEST_CASE("tensor product layout and norms") {
    TruncationDim dim(6);
    TwoModeVector v00 = tensor(vacuum(dim), vacuum(dim));
    CHECK(v00.at(0, 0) == Complex(1.0, 0.0));
    TwoModeVector v10 = tensor(fock_state(1, dim), vacuum(dim));
    CHECK(v10.amps(dim.single()) == Complex(1.0, 0.0));

    // norm multiplies
    FockVector u(Vector::Random(6), dim);
    FockVector w(Vector::Random(6), dim);
    CHECK(tensor(u, w).norm() == doctest::Approx(u.norm() * w.norm()).epsilon(1e-12));

    CHECK_THROWS_AS(tensor(vacuum(dim), vacuum(TruncationDim(8))), std::invalid_argument);
}

TEST_CASE("partial trace: product, Bell-like and thermal reductions") {
    TruncationDim dim(16);
    FockVector ua = coherent(0.7, dim);
    FockVector ub = coherent(Complex(0.0, -0.4), dim);
    DensityMatrix rho = outer(tensor(ua, ub));
    DensityMatrix ra = partial_trace(rho, Mode::a);
    CHECK((ra.m - outer(ua).m).cwiseAbs().maxCoeff() <= 1e-12);
    DensityMatrix rb = partial_trace(rho, Mode::b);
    CHECK((rb.m - outer(ub).m).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(ra.trace() - rho.trace()) <= 1e-12);

    // (|0,1> + |1,0>)/sqrt2 reduces to an equal mixture
    Vector bell = Vector::Zero(dim.two_mode());
    bell(dim.index(0, 1)) = 1.0 / std::sqrt(2.0);
    bell(dim.index(1, 0)) = 1.0 / std::sqrt(2.0);
    DensityMatrix rbell = partial_trace(outer(TwoModeVector(bell, dim)), Mode::a);
    CHECK(std::abs(rbell.m(0, 0).real() - 0.5) < 1e-14);
    CHECK(std::abs(rbell.m(1, 1).real() - 0.5) < 1e-14);
    CHECK(rbell.purity() == doctest::Approx(0.5).epsilon(1e-12));

    // two-mode squeezed vacuum r=1 reduces to a thermal state with purity
    // 1/cosh(2) = 0.265802...; oracle: explicit Schmidt sum tanh^{4n} / cosh^4
    TruncationDim big(64);
    TwoModeVector tm = tmsv(SqueezeParam(1.0), big);
    double purity = reduced_density(tm, Mode::a).purity();
    double schmidt = 0.0;
    for (int n = 0; n < big.single(); ++n)
        schmidt += std::pow(std::tanh(1.0), 4.0 * n) / std::pow(std::cosh(1.0), 4.0);
    CHECK(purity == doctest::Approx(schmidt).epsilon(1e-12));
    CHECK(purity == doctest::Approx(1.0 / std::cosh(2.0)).epsilon(1e-10));

    // reduced_density matches the generic path on both modes
    DensityMatrix full = outer(tm);
    CHECK((partial_trace(full, Mode::b).m - reduced_density(tm, Mode::b).m)
              .cwiseAbs()
              .maxCoeff()
          <= 1e-12);
}

TEST_CASE("fidelity basics") {
    TruncationDim dim(64);
    FockVector c1 = coherent(1.0, dim);
    CHECK(fidelity(c1, c1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(vacuum(dim), fock_state(1, dim)) == 0.0);
    // |<alpha=1|0>|^2 = e^{-1}
    CHECK(fidelity(c1, vacuum(dim)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    // global phase invariance
    FockVector rotated(std::polar(1.0, 0.9) * c1.amps, dim);
    CHECK(fidelity(c1, rotated) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(fidelity(c1, vacuum(TruncationDim(32))), std::invalid_argument);
    FockVector unnorm(2.0 * c1.amps, dim);
    CHECK_THROWS_AS(fidelity(unnorm, c1), std::invalid_argument);
}

TEST_CASE("op_exp: identity, parity, coherent expansion") {
    TruncationDim dim(16);
    Matrix zero = Matrix::Zero(16, 16);
    CHECK((expm(zero) - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff() <= 1e-15);

    // exp(i pi n) = parity
    Matrix gen = Complex(0, M_PI) * number_op(dim).m;
    CHECK((expm(gen) - parity_op(dim).m).cwiseAbs().maxCoeff() <= 1e-12);

    // exp(s(a^dag - a))|0> matches the coherent closed form
    TruncationDim big(64);
    auto [a, ad] = ladder_ops(big);
    Matrix d = expm(Matrix(1.0 * (ad.m - a.m)));
    FockVector from_exp(d * vacuum(big).amps, big);
    CHECK(fidelity(from_exp, coherent(1.0, big)) >= 1.0 - 1e-10);

    Matrix bad = Matrix::Zero(4, 4);
    bad(1, 2) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(expm(bad), std::invalid_argument);
}

TEST_CASE("op_exp inverse property on random Hermitian generators") {
    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    for (int rep = 0; rep < 4; ++rep) {
        Matrix m(20, 20);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) m(i, j) = Complex(g(rng), g(rng));
        Matrix h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        double spectral = std::max(std::abs(es.eigenvalues().minCoeff()),
                                   std::abs(es.eigenvalues().maxCoeff()));
        h *= 10.0 / spectral;
        // unitary generated by a Hermitian matrix of norm 10
        Matrix skew = Complex(0, 1) * h;
        Matrix aS = expm(skew) * expm(Matrix(-skew));
        CHECK((aS - Matrix::Identity(20, 20)).cwiseAbs().maxCoeff() <= 1e-10);
        // real exponent: the product conditioning scales as e^{2||A||}, so the
        // 1e-10 bound is only meaningful at moderate norms
        Matrix h4 = 0.4 * h;
        Matrix aH = expm(h4) * expm(Matrix(-h4));
        CHECK((aH - Matrix::Identity(20, 20)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("generic-path exponential handles non-normal generators") {
    std::mt19937 rng(11);
    std::normal_distribution<double> g;
    Matrix m(12, 12);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) m(i, j) = Complex(g(rng), g(rng));
    Matrix h = 0.5 * (m + m.adjoint());
    Matrix nonnormal = h;
    nonnormal(0, 3) += 0.5;  // off the Hermitian fast path
    CHECK((expm(nonnormal) * expm(Matrix(-nonnormal)) - Matrix::Identity(12, 12))
              .cwiseAbs()
              .maxCoeff()
          <= 1e-10);
}

TEST_CASE("tail mass reporting") {
    TruncationDim dim(64);
    CHECK(vacuum(dim).tail_mass() == 0.0);
    FockVector c = coherent(2.0, dim);
    CHECK(c.tail_mass() < 1e-10);
    TwoModeVector t = tensor(c, c);
    CHECK(t.tail_mass() < 1e-10);
    // a state concentrated at the boundary has tail mass ~ 1
    CHECK(fock_state(63, dim).tail_mass() == doctest::Approx(1.0));
}
