#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ngforge/gaussian.hpp"
#include "ngforge/measurement.hpp"

using namespace ngforge;

TEST_CASE("weak values of eigenstates and the sigma_x closed form") {
    // psi_i = psi_f = (+1)-eigenstate of sigma_x gives weak value 1
    double inv = 1.0 / std::sqrt(2.0);
    SelectionPair plus(QubitState(inv, inv), QubitState(inv, inv), Observable::sigma_x());
    CHECK(std::abs(weak_value(plus).value - 1.0) <= 1e-14);

    // theta = pi/2, delta = 0, psi_f = |H>: tan(pi/4) = 1
    CHECK(std::abs(weak_value(sigma_x_selection(M_PI / 2.0, 0.0)).value - 1.0) <= 1e-13);

    // theta = 0.2 pi, delta = pi/2: i tan(0.1 pi) = 0.3249196...i
    Complex wv = weak_value(sigma_x_selection(0.2 * M_PI, M_PI / 2.0)).value;
    CHECK(std::abs(wv - Complex(0.0, std::tan(0.1 * M_PI))) <= 1e-13);

    // anomalous regime: theta -> 0.9 pi gives tan(0.45 pi) = 6.3137...
    CHECK(weak_value(sigma_x_selection(0.9 * M_PI, 0.0)).value.real()
          == doctest::Approx(std::tan(0.45 * M_PI)).epsilon(1e-12));

    // selection overlap is cos(theta/2)
    CHECK(std::abs(sigma_x_selection(0.6, 1.0).overlap() - std::cos(0.3)) <= 1e-14);
    CHECK(std::abs(weak_value(sigma_x_selection(0.0, 0.3)).value) == 0.0);

    CHECK_THROWS_AS(sigma_x_selection(M_PI, 0.0), std::invalid_argument);
}

TEST_CASE("observable and qubit validation") {
    Eigen::Matrix2cd not_involutive;
    not_involutive << 1, 0, 0, 0.5;
    CHECK_THROWS_AS(Observable{not_involutive}, std::invalid_argument);
    Eigen::Matrix2cd not_hermitian;
    not_hermitian << 0, 1, -1, 0;
    CHECK_THROWS_AS(Observable{not_hermitian}, std::invalid_argument);
    CHECK_NOTHROW(Observable::bloch(1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0),
                                    1.0 / std::sqrt(3.0)));

    CHECK_THROWS_AS(QubitState(1.0, 1.0), std::invalid_argument);
    // orthogonal postselection is rejected
    CHECK_THROWS_AS(SelectionPair(QubitState::horizontal(), QubitState::vertical(),
                                  Observable::sigma_x()),
                    std::invalid_argument);
}

TEST_CASE("channel: single-branch boundary and even-cat norm factor") {
    TruncationDim dim(64);
    // wv = 1 kills the t- branch: output is exactly D(s)|phi>, p = |overlap|^2
    FockVector pointer = coherent(Complex(0.2, 0.1), dim);
    auto res = postselect_channel(pointer, WeakValue{1.0}, Complex(0.6, 0.0),
                                  CouplingSpec::strength(1.2));
    FockVector displaced(displacement(1.2, dim).m * pointer.amps, dim);
    CHECK(fidelity(res.state, displaced.normalized()) >= 1.0 - 1e-12);
    CHECK(res.p == doctest::Approx(0.36).epsilon(1e-10));

    // wv = -1 keeps only D(-s)
    auto resm = postselect_channel(pointer, WeakValue{-1.0}, Complex(0.6, 0.0),
                                   CouplingSpec::strength(1.2));
    FockVector displaced_m(displacement(-1.2, dim).m * pointer.amps, dim);
    CHECK(fidelity(resm.state, displaced_m.normalized()) >= 1.0 - 1e-12);

    // wv = 0, s = 1 on vacuum: even cat with norm factor 1/sqrt(2(1+e^{-2}))
    auto even = postselect_channel(vacuum(dim), WeakValue{0.0}, 1.0, CouplingSpec::strength(1.0));
    Vector raw = coherent(1.0, dim).amps + coherent(-1.0, dim).amps;
    CHECK(fidelity(even.state, FockVector(raw / raw.norm(), dim)) >= 1.0 - 1e-12);
    double norm_factor = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0)));
    CHECK(1.0 / raw.norm() == doctest::Approx(norm_factor).epsilon(1e-12));
    // p = |ov/2|^2 ||t+ |s> + t- |-s>||^2 = (1 + e^{-2})/2 at ov = 1
    CHECK(even.p == doctest::Approx((1.0 + std::exp(-2.0)) / 2.0).epsilon(1e-12));

    CHECK_THROWS_AS(postselect_channel(pointer, WeakValue{0.0}, 0.0, CouplingSpec::strength(1.0)),
                    std::invalid_argument);
}

TEST_CASE("channel against the full-evolution oracle") {
    TruncationDim dim(96);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 8; ++rep) {
        double theta = 0.05 + 2.8 * u(rng);
        double delta = 2.0 * M_PI * u(rng);
        double s = 2.0 * u(rng);
        double sigma = 0.3 + 0.5 * u(rng);
        SelectionPair sel = sigma_x_selection(theta, delta);
        CouplingSpec c = CouplingSpec::from_g_sigma(2.0 * s * sigma, sigma);
        FockVector pointer = (rep % 2 == 0)
                                 ? vacuum(dim)
                                 : squeezed_vacuum(SqueezeParam(0.9 * u(rng)), dim);
        auto chan = postselect_channel(pointer, sel, c);
        auto oracle = evolve_full(sel, pointer, c);
        CHECK(fidelity(chan.state, oracle.normalized()) >= 1.0 - 1e-10);
        CHECK(std::abs(chan.p - oracle.p) <= 1e-10);
    }
}

TEST_CASE("oracle with g = 0 and the two closed unitary routes") {
    TruncationDim dim(48);
    SelectionPair sel = sigma_x_selection(0.8, 0.3);
    FockVector pointer = coherent(0.5, dim);
    auto res = evolve_full(sel, pointer, CouplingSpec::from_g_sigma(0.0, 0.5));
    CHECK(fidelity(res.normalized(), pointer) >= 1.0 - 1e-13);
    CHECK(res.p == doctest::Approx(std::norm(sel.overlap())).epsilon(1e-12));

    for (const Observable& a : {Observable::sigma_x(), Observable::sigma_z(),
                                Observable::bloch(0.36, 0.48, 0.8)}) {
        for (double g : {0.7, 4.0}) {
            Matrix u1 = interaction_unitary_exp(a, g, Quadrature::P, 0.5, dim);
            Matrix u2 = interaction_unitary_closed(a, g, Quadrature::P, 0.5, dim);
            int keep = 24;
            double worst = 0.0;
            for (int qi = 0; qi < 2; ++qi)
                for (int qj = 0; qj < 2; ++qj)
                    worst = std::max(worst, (u1.block(qi * 48, qj * 48, keep, keep)
                                             - u2.block(qi * 48, qj * 48, keep, keep))
                                                .cwiseAbs()
                                                .maxCoeff());
            CHECK(worst <= 1e-10);
        }
    }
}

TEST_CASE("X-quadrature branch matches the oracle") {
    TruncationDim dim(64);
    SelectionPair sel = sigma_x_selection(1.1, 0.7);
    CouplingSpec c = CouplingSpec::from_g_sigma(0.9, 0.6, Quadrature::X);
    FockVector pointer = coherent(0.4, dim);
    auto chan = postselect_channel(pointer, sel, c);
    auto oracle = evolve_full(sel, pointer, c);
    CHECK(fidelity(chan.state, oracle.normalized()) >= 1.0 - 1e-10);
    CHECK(std::abs(chan.p - oracle.p) <= 1e-10);
    // the X channel needs the oracle parameters
    CHECK_THROWS_AS(postselect_channel(pointer, weak_value(sel), sel.overlap(),
                                       CouplingSpec{0.75, Quadrature::X, {}, {}}),
                    std::invalid_argument);
}

TEST_CASE("two-mode channel acts on one mode only") {
    TruncationDim dim(32);
    FockVector b_in = coherent(Complex(0.3, 0.5), dim);
    TwoModeVector input = tensor(vacuum(dim), b_in);
    auto res = postselect_channel_two_mode(input, WeakValue{1.0}, 1.0,
                                           CouplingSpec::strength(0.9), Mode::a);
    CHECK(fidelity(res.state, tensor(coherent(0.9, dim), b_in)) >= 1.0 - 1e-11);

    // measured mode b leaves mode a untouched
    auto resb = postselect_channel_two_mode(input, WeakValue{1.0}, 1.0,
                                            CouplingSpec::strength(0.9), Mode::b);
    FockVector shifted(displacement(0.9, dim).m * b_in.amps, dim);
    CHECK(fidelity(resb.state, tensor(vacuum(dim), shifted.normalized())) >= 1.0 - 1e-11);

    // probability equals the single-mode value for separable inputs
    auto single = postselect_channel(vacuum(dim), WeakValue{0.4}, 0.8, CouplingSpec::strength(0.9));
    auto both = postselect_channel_two_mode(input, WeakValue{0.4}, 0.8,
                                            CouplingSpec::strength(0.9), Mode::a);
    CHECK(std::abs(single.p - both.p) <= 1e-12);
    // and the splitter cannot change it (unitarity)
    TwoModeVector mixed = apply_beam_splitter(BeamSplitterParam::balanced(), both.state);
    CHECK(std::abs(mixed.norm_sq() - 1.0) <= 1e-12);
}

TEST_CASE("channel completeness over an orthonormal postselection pair") {
    TruncationDim dim(64);
    std::mt19937 rng(23);
    std::normal_distribution<double> g;
    for (int rep = 0; rep < 6; ++rep) {
        Complex h(g(rng), g(rng)), v(g(rng), g(rng));
        double n = std::sqrt(std::norm(h) + std::norm(v));
        QubitState pi(h / n, v / n);
        Complex h2(g(rng), g(rng)), v2(g(rng), g(rng));
        double n2 = std::sqrt(std::norm(h2) + std::norm(v2));
        QubitState pf(h2 / n2, v2 / n2);
        QubitState perp = pf.orthogonal();
        if (std::abs(pf.vec().dot(pi.vec())) < 0.1) continue;
        if (std::abs(perp.vec().dot(pi.vec())) < 0.1) continue;
        Observable a = Observable::bloch(0.6, 0.0, 0.8);
        FockVector pointer = coherent(0.7, dim);
        double p1 = postselect_channel(pointer, SelectionPair(pi, pf, a),
                                       CouplingSpec::strength(1.3))
                        .p;
        double p2 = postselect_channel(pointer, SelectionPair(pi, perp, a),
                                       CouplingSpec::strength(1.3))
                        .p;
        CHECK(std::abs(p1 + p2 - 1.0) <= 1e-10);
        CHECK(p1 > 0.0);
        CHECK(p1 <= 1.0 + 1e-12);
    }
}

TEST_CASE("closed-form success probability") {
    // s = 0: bare postselection cos^2(theta/2)
    CHECK(success_probability_closed(0.8, 0.0, 0.0)
          == doctest::Approx(std::cos(0.4) * std::cos(0.4)).epsilon(1e-14));

    // s = 2, r = 0: flat at 1/2 within 3.4e-4 over theta
    for (double theta : {0.0, M_PI / 4.0, M_PI / 2.0, 3.0 * M_PI / 4.0})
        CHECK(std::abs(success_probability_closed(theta, 0.0, 2.0) - 0.5) <= 3.4e-4);

    // s = 1, r = 0.5, theta = pi/3: (1 + e^{-2e} / 2) / 2 = 0.5010886...
    CHECK(success_probability_closed(M_PI / 3.0, 0.0, 1.0, 0.5)
          == doctest::Approx(0.5 * (1.0 + std::exp(-2.0 * M_E) * 0.5)).epsilon(1e-14));

    // matches the channel norm on a grid, independently of delta
    TruncationDim dim(96);
    for (double theta : {0.3, 1.2, 2.4}) {
        for (double s : {0.5, 1.0, 2.0}) {
            for (double r : {0.0, 0.5}) {
                FockVector pointer =
                    (r == 0.0) ? vacuum(dim) : squeezed_vacuum(SqueezeParam(r), dim);
                for (double delta : {0.0, 1.9}) {
                    auto res = postselect_channel(pointer, sigma_x_selection(theta, delta),
                                                  CouplingSpec::strength(s));
                    CHECK(std::abs(res.p - success_probability_closed(theta, delta, s, r))
                          <= 1e-10);
                }
            }
        }
    }
    CHECK_THROWS_AS(success_probability_closed(M_PI, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("degenerate cancellation carries the raw norm") {
    TruncationDim dim(32);
    // a tiny selection overlap drives p below the representable floor
    try {
        postselect_channel(vacuum(dim), WeakValue{0.0}, Complex(1e-9, 0.0),
                           CouplingSpec::strength(0.0));
        FAIL("expected DegenerateCancellation");
    } catch (const DegenerateCancellation& e) {
        CHECK(e.raw_norm_sq < 1e-15);
        CHECK(e.raw_norm_sq > 0.0);
    }
}

TEST_CASE("coupling validation") {
    CHECK_THROWS_AS(CouplingSpec::strength(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(CouplingSpec::from_g_sigma(1.0, 0.0), std::invalid_argument);
    // inconsistent s vs g/(2 sigma) is rejected on use
    CouplingSpec bad{1.0, Quadrature::P, 3.0, 0.5};
    CHECK_THROWS_AS(postselect_channel(vacuum(TruncationDim(16)), WeakValue{0.0}, 1.0, bad),
                    std::invalid_argument);
    // oracle requires g and sigma
    CHECK_THROWS_AS(evolve_full(sigma_x_selection(0.5, 0.0), vacuum(TruncationDim(16)),
                                CouplingSpec::strength(1.0)),
                    std::invalid_argument);
}

TEST_CASE("oracle flags truncation leakage") {
    // a strong coupling on a tiny space pushes weight onto the boundary
    TruncationDim dim(8);
    CHECK_THROWS_AS(evolve_full(sigma_x_selection(0.5, 0.0), vacuum(dim),
                                CouplingSpec::from_g_sigma(3.0, 0.5)),
                    TruncationError);
}
