#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ngforge/gaussian.hpp"

using namespace ngforge;

namespace {
Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}
} // namespace

TEST_CASE("coherent amplitudes and overlaps") {
    TruncationDim dim(64);
    CHECK(fidelity(coherent(0.0, dim), vacuum(dim)) == doctest::Approx(1.0).epsilon(1e-15));
    // c0 = e^{-1/2}
    CHECK(coherent(1.0, dim).amps(0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    // <s|-s> = e^{-2 s^2} at s = 1.5
    double s = 1.5;
    Complex ov = inner(coherent(s, dim), coherent(-s, dim));
    CHECK(std::abs(ov - std::exp(-2.0 * s * s)) < 1e-13);
    CHECK_THROWS_AS(coherent(8.0, dim), TruncationError);
}

TEST_CASE("displacement operator: identity, inverses, path agreement") {
    TruncationDim dim(64);
    CHECK((displacement(0.0, dim).m - Matrix::Identity(64, 64)).cwiseAbs().maxCoeff() <= 1e-14);

    FockVector psi = coherent(Complex(0.3, -0.2), dim);
    Complex alpha(0.8, 0.5);
    Vector round = displacement(alpha, dim).m * (displacement(-alpha, dim).m * psi.amps);
    CHECK(fidelity(FockVector(round, dim), psi) >= 1.0 - 1e-10);

    CHECK(fidelity(FockVector(displacement(1.0, dim).m * vacuum(dim).amps, dim),
                   coherent(1.0, dim))
          >= 1.0 - 1e-10);
}

TEST_CASE("displacement composition picks up the symplectic phase") {
    TruncationDim dim(64);
    Complex a(0.6, -0.3), b(-0.2, 0.9);
    Vector lhs = displacement(a, dim).m * (displacement(b, dim).m * vacuum(dim).amps);
    Complex phase = std::polar(1.0, (a * std::conj(b)).imag());
    Vector rhs = phase * (displacement(a + b, dim).m * vacuum(dim).amps);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("exact displacement elements match the exponential deep inside the space") {
    TruncationDim dim(48);
    Complex gamma(1.1, -0.7);
    Matrix viaExp = displacement(gamma, dim).m;
    Matrix exact = displacement_elements(gamma, 48);
    // compare on the low-occupation block; the truncated exponential is only
    // faithful away from the boundary
    CHECK((viaExp.topLeftCorner(24, 24) - exact.topLeftCorner(24, 24)).cwiseAbs().maxCoeff()
          <= 1e-12);
    // far displacements: unitary rows stay bounded and the bilinear agrees
    Complex big(6.0, 6.0);
    Matrix far = displacement_elements(2.0 * big, 48);
    CHECK(far.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
    Vector u = coherent(0.4, dim).amps, v = coherent(Complex(0, 0.3), dim).amps;
    Complex direct = (u.adjoint() * far * v)(0);
    CHECK(std::abs(displacement_bilinear(u, v, 2.0 * big) - direct) <= 1e-13);
}

TEST_CASE("squeeze: identity, vacuum amplitude, parity, variances") {
    TruncationDim dim(128);
    CHECK((squeeze(SqueezeParam(0.0), dim).m - Matrix::Identity(128, 128)).cwiseAbs().maxCoeff()
          <= 1e-14);

    // <0|S(1)|0> = 1/sqrt(cosh 1) = 0.805018...
    Vector sv = squeeze(SqueezeParam(1.0), dim).m * vacuum(dim).amps;
    CHECK(std::abs(sv(0) - 1.0 / std::sqrt(std::cosh(1.0))) < 1e-12);

    // analytic even-only amplitudes agree with the matrix route
    FockVector closed = squeezed_vacuum(SqueezeParam(1.0), dim);
    CHECK(fidelity(closed, FockVector(sv, dim)) >= 1.0 - 1e-11);
    for (int n = 1; n < 128; n += 2) CHECK(std::abs(closed.amps(n)) <= 1e-14);

    // quadrature variances: X is squeezed by e^{-2r}, P antisqueezed by e^{2r};
    // the ratio relative to vacuum is sigma-independent
    double r = 0.8, sigma = 0.5;
    FockVector squeezed = squeezed_vacuum(SqueezeParam(r), dim);
    Matrix x = quadrature_op(Quadrature::X, sigma, dim).m;
    Matrix p = quadrature_op(Quadrature::P, sigma, dim).m;
    double vx = squeezed.amps.dot(x * (x * squeezed.amps)).real();
    double vp = squeezed.amps.dot(p * (p * squeezed.amps)).real();
    double vx0 = vacuum(dim).amps.dot(x * (x * vacuum(dim).amps)).real();
    double vp0 = vacuum(dim).amps.dot(p * (p * vacuum(dim).amps)).real();
    CHECK(vx / vx0 == doctest::Approx(std::exp(-2.0 * r)).epsilon(1e-10));
    CHECK(vp / vp0 == doctest::Approx(std::exp(2.0 * r)).epsilon(1e-10));
    // sigma = 1/2 pins <X^2> = e^{-2r}/4 directly
    CHECK(vx == doctest::Approx(std::exp(-2.0 * r) / 4.0).epsilon(1e-10));

    CHECK_THROWS_AS(squeeze(SqueezeParam(1.6), dim), std::invalid_argument);
    CHECK_THROWS_AS(squeezed_vacuum(SqueezeParam(1.0), TruncationDim(64)), TruncationError);
}

TEST_CASE("two-mode squeeze: Schmidt amplitudes and blocked construction") {
    TruncationDim dim(64);
    TwoModeVector tm = tmsv(SqueezeParam(1.0), dim);
    // |amplitude| on |1,1> = tanh(1)/cosh(1) = 0.493554...
    CHECK(std::abs(tm.at(1, 1)) == doctest::Approx(std::tanh(1.0) / std::cosh(1.0)).epsilon(1e-13));
    CHECK(reduced_density(tm, Mode::a).purity()
          == doctest::Approx(1.0 / std::cosh(2.0)).epsilon(1e-10));

    // identity at zero squeezing
    TruncationDim small(12);
    CHECK((two_mode_squeeze(SqueezeParam(0.0), small).m
           - Matrix::Identity(small.two_mode(), small.two_mode()))
              .cwiseAbs()
              .maxCoeff()
          <= 1e-14);

    // blocked construction equals the dense exponential of the full generator
    auto [a, ad] = ladder_ops(small);
    Matrix eye = Matrix::Identity(12, 12);
    SqueezeParam xi(0.6, 1.1);
    Complex z = xi.xi();
    Matrix gen = std::conj(z) * kron(a.m, eye) * kron(eye, a.m)
                 - z * kron(ad.m, eye) * kron(eye, ad.m);
    CHECK((two_mode_squeeze(xi, small).m - expm(gen)).cwiseAbs().maxCoeff() <= 1e-12);

    // operator route applied to |0,0> matches the analytic amplitudes
    TwoModeVector via_op = apply_two_mode_squeeze(SqueezeParam(1.0),
                                                  tensor(vacuum(dim), vacuum(dim)));
    CHECK(fidelity(via_op, tm) >= 1.0 - 1e-11);
    CHECK_THROWS_AS(two_mode_squeeze(SqueezeParam(1.3), small), std::invalid_argument);
}

TEST_CASE("beam splitter: identity, coherent slot map, conservation laws") {
    TruncationDim small(12);
    CHECK((beam_splitter({0.0, 0.0, 0.0}, small).m
           - Matrix::Identity(small.two_mode(), small.two_mode()))
              .cwiseAbs()
              .maxCoeff()
          <= 1e-14);

    // blocked dense operator equals the exponential of the full generator
    auto [a, ad] = ladder_ops(small);
    Matrix eye = Matrix::Identity(12, 12);
    double tau = M_PI / 4.0;
    Matrix gen = tau * (kron(ad.m, eye) * kron(eye, a.m) - kron(a.m, eye) * kron(eye, ad.m));
    CHECK((beam_splitter(BeamSplitterParam::balanced(), small).m - expm(gen))
              .cwiseAbs()
              .maxCoeff()
          <= 1e-12);
    // apply path equals the dense operator
    TruncationDim mid(16);
    TwoModeVector probe = tensor(coherent(0.5, mid), coherent(Complex(0.1, 0.4), mid));
    Vector dense = beam_splitter(BeamSplitterParam::balanced(), mid).m * probe.amps;
    CHECK((apply_beam_splitter(BeamSplitterParam::balanced(), probe).amps - dense)
              .cwiseAbs()
              .maxCoeff()
          <= 1e-12);

    TruncationDim dim(40);
    Complex al(0.9, 0.0), be(-0.2, 0.3);
    TwoModeVector mixed = apply_beam_splitter(BeamSplitterParam::balanced(),
                                              tensor(coherent(al, dim), coherent(be, dim)));
    TwoModeVector expected = tensor(coherent((al + be) / std::sqrt(2.0), dim),
                                    coherent((-al + be) / std::sqrt(2.0), dim));
    CHECK(fidelity(mixed, expected) >= 1.0 - 1e-11);

    // |alpha>|alpha> -> |sqrt2 alpha>|0>
    TwoModeVector same = apply_beam_splitter(BeamSplitterParam::balanced(),
                                             tensor(coherent(0.8, dim), coherent(0.8, dim)));
    CHECK(fidelity(same, tensor(coherent(0.8 * std::sqrt(2.0), dim), vacuum(dim)))
          >= 1.0 - 1e-11);

    // photon number conservation
    auto photons = [&](const TwoModeVector& v) {
        double total = 0;
        for (int na = 0; na < 40; ++na)
            for (int nb = 0; nb < 40; ++nb) total += (na + nb) * std::norm(v.at(na, nb));
        return total;
    };
    TwoModeVector in = tensor(coherent(1.1, dim), squeezed_vacuum(SqueezeParam(0.5), dim));
    TwoModeVector out = apply_beam_splitter(BeamSplitterParam::balanced(), in);
    CHECK(std::abs(photons(in) - photons(out)) <= 1e-10);
    CHECK(std::abs(in.norm_sq() - out.norm_sq()) <= 1e-12);

    // R + T = 1 for any tau
    BeamSplitterParam p{0.7, 0.2, -0.4};
    CHECK(p.reflectivity() + p.transmittance() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("general-phase beam splitter realizes the printed scattering matrix") {
    // Heisenberg check: U^dag a U = T e^{i phi_tau} a + R e^{i phi_rho} b etc.,
    // verified through the coherent-label transformation it induces.
    TruncationDim dim(24);
    BeamSplitterParam p{0.6, 0.8, -0.5};
    Complex al(0.4, 0.1), be(-0.3, 0.2);
    Eigen::Matrix2cd scatter;
    scatter << std::cos(p.tau) * std::polar(1.0, p.phi_tau),
        std::sin(p.tau) * std::polar(1.0, p.phi_rho),
        -std::sin(p.tau) * std::polar(1.0, -p.phi_rho),
        std::cos(p.tau) * std::polar(1.0, -p.phi_tau);
    Eigen::Vector2cd labels = scatter * Eigen::Vector2cd(al, be);
    TwoModeVector mixed =
        apply_beam_splitter(p, tensor(coherent(al, dim), coherent(be, dim)));
    CHECK(fidelity(mixed, tensor(coherent(labels(0), dim), coherent(labels(1), dim)))
          >= 1.0 - 1e-11);
    // dense and apply routes agree with phases present
    Vector dense = beam_splitter(p, dim).m * tensor(coherent(al, dim), coherent(be, dim)).amps;
    CHECK((mixed.amps - dense).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("opposite squeezers through the balanced splitter give the negated two-mode squeeze") {
    TruncationDim dim(40);
    SqueezeParam xi(0.5);
    TwoModeVector in = tensor(squeezed_vacuum(xi, dim), squeezed_vacuum(xi.negated(), dim));
    TwoModeVector mixed = apply_beam_splitter(BeamSplitterParam::balanced(), in);
    TwoModeVector neg = apply_two_mode_squeeze(xi.negated(), tensor(vacuum(dim), vacuum(dim)));
    TwoModeVector pos = apply_two_mode_squeeze(xi, tensor(vacuum(dim), vacuum(dim)));
    CHECK(fidelity(mixed, neg) >= 1.0 - 1e-9);
    CHECK(fidelity(mixed, pos) < 0.9);  // the sign matters
}

TEST_CASE("photon subtraction") {
    TruncationDim dim(64);
    auto one = photon_subtract(fock_state(1, dim), 1);
    CHECK_FALSE(one.zero);
    CHECK(one.weight == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(one.state.normalized(), vacuum(dim)) >= 1.0 - 1e-14);

    auto vac = photon_subtract(vacuum(dim), 1);
    CHECK(vac.zero);
    CHECK(vac.weight == 0.0);

    // a^2 S(r)|0> is proportional to S(r)[|0> - sqrt2 tanh(r) |2>]
    double r = 0.8;
    TruncationDim big(128);
    auto sub = photon_subtract(squeezed_vacuum(SqueezeParam(r), big), 2);
    Vector target = squeeze(SqueezeParam(r), big).m
                    * (vacuum(big).amps - std::sqrt(2.0) * std::tanh(r) * fock_state(2, big).amps);
    CHECK(fidelity(sub.state.normalized(), FockVector(target / target.norm(), big))
          >= 1.0 - 1e-10);
    CHECK_THROWS_AS(photon_subtract(vacuum(dim), 0), std::invalid_argument);
}

TEST_CASE("randomized path agreement between analytic and exponential routes") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    TruncationDim dim(96);
    for (int rep = 0; rep < 6; ++rep) {
        Complex alpha = std::polar(2.0 * u(rng), 2.0 * M_PI * u(rng));
        CHECK(fidelity(coherent(alpha, dim),
                       FockVector(displacement(alpha, dim).m * vacuum(dim).amps, dim))
              >= 1.0 - 1e-10);
        SqueezeParam xi(1.1 * u(rng), 2.0 * M_PI * u(rng));
        CHECK(fidelity(squeezed_vacuum(xi, TruncationDim(128)),
                       FockVector(squeeze(xi, TruncationDim(128)).m
                                      * vacuum(TruncationDim(128)).amps,
                                  TruncationDim(128)))
              >= 1.0 - 1e-10);
    }
}
