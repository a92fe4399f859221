#include "ngforge/verify.hpp"

#include <cmath>
#include <random>

#include "ngforge/analysis.hpp"
#include "ngforge/gaussian.hpp"
#include "ngforge/measurement.hpp"
#include "ngforge/protocols.hpp"

namespace ngforge {

namespace {

struct Suite {
    VerifyLevel level;
    VerifyMutation mutation;
    std::vector<CheckResult> results;
    std::mt19937 rng{20250809};  // fixed seed: verify output is deterministic

    bool full() const { return level == VerifyLevel::Full; }

    void record(const std::string& name, double worst, double tol, std::string note = "") {
        results.push_back({name, worst <= tol, worst, tol, std::move(note)});
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    Complex random_phase_amp(double max_mag) {
        return std::polar(uniform(0.0, max_mag), uniform(0.0, 2.0 * M_PI));
    }

    QubitState random_qubit() {
        std::normal_distribution<double> g;
        Complex h(g(rng), g(rng)), v(g(rng), g(rng));
        double n = std::sqrt(std::norm(h) + std::norm(v));
        return QubitState(h / n, v / n);
    }

    Observable random_observable() {
        std::normal_distribution<double> g;
        double nx = g(rng), ny = g(rng), nz = g(rng);
        double n = std::sqrt(nx * nx + ny * ny + nz * nz);
        return Observable::bloch(nx / n, ny / n, nz / n);
    }
};

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

void check_ladder_algebra(Suite& st) {
    TruncationDim dim(32);
    auto [a, ad] = ladder_ops(dim);
    Matrix comm = a.m * ad.m - ad.m * a.m;
    double worst = (comm.topLeftCorner(30, 30) - Matrix::Identity(30, 30)).cwiseAbs().maxCoeff();
    st.record("ladder-commutator", worst, 1e-12);

    Matrix x = quadrature_op(Quadrature::X, 0.7, dim).m;
    Matrix p = quadrature_op(Quadrature::P, 0.7, dim).m;
    Matrix xp = x * p - p * x;
    double worst2 = (xp.topLeftCorner(16, 16) - Complex(0, 1) * Matrix::Identity(16, 16))
                        .cwiseAbs()
                        .maxCoeff();
    st.record("quadrature-commutator", worst2, 1e-10);
}

void check_op_exp_inverse(Suite& st) {
    int reps = st.full() ? 8 : 3;
    double worst = 0;
    std::normal_distribution<double> g;
    for (int k = 0; k < reps; ++k) {
        Matrix m(24, 24);
        for (int i = 0; i < 24; ++i)
            for (int j = 0; j < 24; ++j) m(i, j) = Complex(g(st.rng), g(st.rng));
        Matrix h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        double spectral = std::max(std::abs(es.eigenvalues().minCoeff()),
                                   std::abs(es.eigenvalues().maxCoeff()));
        h *= 10.0 / spectral;
        // unitary route at the full norm, real exponent at a conditioned norm
        Matrix skew = Complex(0, 1) * h;
        Matrix prod_u = expm(skew) * expm(Matrix(-skew));
        worst = std::max(worst, (prod_u - Matrix::Identity(24, 24)).cwiseAbs().maxCoeff());
        Matrix h4 = 0.4 * h;
        Matrix prod_h = expm(h4) * expm(Matrix(-h4));
        worst = std::max(worst, (prod_h - Matrix::Identity(24, 24)).cwiseAbs().maxCoeff());
    }
    st.record("op-exp-inverse", worst, 1e-10);
}

void check_gaussian_paths(Suite& st) {
    TruncationDim dim(64);
    int reps = st.full() ? 12 : 5;
    double worst_d = 0, worst_s = 0, worst_parity = 0, worst_comp = 0;
    for (int k = 0; k < reps; ++k) {
        Complex alpha = st.random_phase_amp(2.0);
        worst_d = std::max(worst_d,
                           1.0 - fidelity(coherent(alpha, dim),
                                          FockVector(displacement(alpha, dim).m * vacuum(dim).amps, dim)));
        Complex beta = st.random_phase_amp(2.0);
        Vector lhs = displacement(alpha, dim).m * (displacement(beta, dim).m * vacuum(dim).amps);
        Complex phase = std::polar(1.0, (alpha * std::conj(beta)).imag());
        Vector rhs = phase * (displacement(alpha + beta, dim).m * vacuum(dim).amps);
        worst_comp = std::max(worst_comp, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    TruncationDim big(128);
    for (int k = 0; k < reps; ++k) {
        SqueezeParam xi(st.uniform(0.0, 1.2), st.uniform(0.0, 2.0 * M_PI));
        FockVector an = squeezed_vacuum(xi, big);
        FockVector mx = FockVector(squeeze(xi, big).m * vacuum(big).amps, big);
        worst_s = std::max(worst_s, 1.0 - fidelity(an, mx));
    }
    FockVector sv = squeezed_vacuum(SqueezeParam(1.0), big);
    for (int n = 1; n < 128; n += 2) worst_parity = std::max(worst_parity, std::abs(sv.amps(n)));
    st.record("displacement-path-agreement", worst_d, 1e-10);
    st.record("displacement-composition", worst_comp, 1e-10);
    st.record("squeeze-path-agreement", worst_s, 1e-10);
    st.record("squeezed-vacuum-parity", worst_parity, 1e-14);
}

void check_blocked_vs_dense(Suite& st) {
    TruncationDim dim(14);
    int n = dim.single();
    auto [a, ad] = ladder_ops(dim);
    Matrix eye = Matrix::Identity(n, n);
    SqueezeParam xi(0.6, 0.9);
    Complex z = xi.xi();
    Matrix gen = std::conj(z) * kron(a.m, eye) * kron(eye, a.m)
                 - z * kron(ad.m, eye) * kron(eye, ad.m);
    double worst = (two_mode_squeeze(xi, dim).m - expm(gen)).cwiseAbs().maxCoeff();

    double tau = M_PI / 4.0;
    Matrix bsgen = tau * (kron(ad.m, eye) * kron(eye, a.m) - kron(a.m, eye) * kron(eye, ad.m));
    worst = std::max(worst,
                     (beam_splitter(BeamSplitterParam::balanced(), dim).m - expm(bsgen))
                         .cwiseAbs()
                         .maxCoeff());
    st.record("two-mode-blocked-vs-dense", worst, 1e-12);
}

void check_beam_splitter(Suite& st) {
    TruncationDim dim(40);
    // photon number and norm conservation on a generic superposition
    FockVector u(coherent(0.9, dim).amps + 0.4 * squeezed_vacuum(SqueezeParam(0.5), dim).amps, dim);
    u = u.normalized();
    TwoModeVector v = tensor(u, coherent(Complex(0.2, -0.5), dim));
    TwoModeVector w = apply_beam_splitter(BeamSplitterParam::balanced(), v);
    double worst_norm = std::abs(w.norm_sq() - v.norm_sq());
    auto photon_sum = [&](const TwoModeVector& x) {
        double total = 0;
        int n = x.dim.single();
        for (int na = 0; na < n; ++na)
            for (int nb = 0; nb < n; ++nb) total += (na + nb) * std::norm(x.at(na, nb));
        return total;
    };
    double worst_photon = std::abs(photon_sum(w) - photon_sum(v));
    st.record("bs-norm-preservation", worst_norm, 1e-12);
    st.record("bs-photon-number-conservation", worst_photon, 1e-10);

    // coherent slot map of the balanced splitter
    Complex al(0.7, 0.0), be(-0.3, 0.4);
    TwoModeVector coh = tensor(coherent(al, dim), coherent(be, dim));
    TwoModeVector mixed = apply_beam_splitter(BeamSplitterParam::balanced(), coh);
    TwoModeVector expect = tensor(coherent((al + be) / std::sqrt(2.0), dim),
                                  coherent((-al + be) / std::sqrt(2.0), dim));
    st.record("bs-coherent-slot-map", 1.0 - fidelity(mixed, expect), 1e-10);

    // conjugating opposite single-mode squeezers through the balanced splitter
    // equals the two-mode squeezer with the negated parameter
    SqueezeParam xi(0.5);
    TwoModeVector sqin = tensor(squeezed_vacuum(xi, dim), squeezed_vacuum(xi.negated(), dim));
    TwoModeVector mixed2 = apply_beam_splitter(BeamSplitterParam::balanced(), sqin);
    TwoModeVector target = apply_two_mode_squeeze(xi.negated(),
                                                  tensor(vacuum(dim), vacuum(dim)));
    st.record("bs-squeeze-conjugation", 1.0 - fidelity(mixed2, target), 1e-9);
}

void check_channel_vs_oracle(Suite& st) {
    int draws = st.full() ? 50 : 10;
    TruncationDim dim(128);
    double worst_f = 0, worst_p = 0, worst_x = 0;
    for (int k = 0; k < draws; ++k) {
        Observable a = (k % 3 == 0) ? Observable::sigma_x()
                                    : (k % 3 == 1 ? Observable::sigma_z() : st.random_observable());
        QubitState pi = st.random_qubit();
        QubitState pf = st.random_qubit();
        Complex ov = pf.vec().dot(pi.vec());
        if (std::abs(ov) < 0.05) { --k; continue; }
        SelectionPair sel(pi, pf, a);
        WeakValue wv = weak_value(sel);
        if (std::abs(wv.value) > 10.0) { --k; continue; }
        double s = st.uniform(0.0, 2.0);
        double r = st.uniform(0.0, 1.0);
        FockVector pointer = (k % 2 == 0) ? vacuum(dim) : squeezed_vacuum(SqueezeParam(r), dim);
        double sigma = st.uniform(0.3, 0.8);
        CouplingSpec c = CouplingSpec::from_g_sigma(2.0 * s * sigma, sigma);
        auto chan = postselect_channel(pointer, sel, c);
        auto oracle = evolve_full(sel, pointer, c);
        worst_f = std::max(worst_f, 1.0 - fidelity(chan.state, oracle.normalized()));
        worst_p = std::max(worst_p, std::abs(chan.p - oracle.p));
    }
    // X-quadrature branch of the channel against the same oracle
    int xdraws = st.full() ? 10 : 4;
    for (int k = 0; k < xdraws; ++k) {
        SelectionPair sel = sigma_x_selection(st.uniform(0.1, 2.5), st.uniform(0.0, 2.0 * M_PI));
        double g = st.uniform(0.1, 1.5), sigma = st.uniform(0.3, 0.8);
        CouplingSpec c = CouplingSpec::from_g_sigma(g, sigma, Quadrature::X);
        FockVector pointer = vacuum(dim);
        auto chan = postselect_channel(pointer, sel, c);
        auto oracle = evolve_full(sel, pointer, c);
        worst_x = std::max(worst_x, 1.0 - fidelity(chan.state, oracle.normalized()));
        worst_x = std::max(worst_x, std::abs(chan.p - oracle.p));
    }
    st.record("channel-vs-oracle", std::max(worst_f, worst_p), 1e-10);
    st.record("channel-vs-oracle-x-quadrature", worst_x, 1e-10);

    // closed-form unitary vs direct exponential
    TruncationDim small(48);
    double worst_u = 0;
    for (const Observable& a :
         {Observable::sigma_x(), Observable::sigma_z(), st.random_observable()}) {
        double g = st.uniform(0.5, 4.0);
        Matrix u1 = interaction_unitary_exp(a, g, Quadrature::P, 0.5, small);
        Matrix u2 = interaction_unitary_closed(a, g, Quadrature::P, 0.5, small);
        // compare on the low-occupation subspace; the truncated boundary rows differ
        int keep = 24;
        Matrix d1(2 * keep, 2 * keep), d2(2 * keep, 2 * keep);
        for (int qi = 0; qi < 2; ++qi)
            for (int qj = 0; qj < 2; ++qj) {
                d1.block(qi * keep, qj * keep, keep, keep) =
                    u1.block(qi * 48, qj * 48, keep, keep);
                d2.block(qi * keep, qj * keep, keep, keep) =
                    u2.block(qi * 48, qj * 48, keep, keep);
            }
        worst_u = std::max(worst_u, (d1 - d2).cwiseAbs().maxCoeff());
    }
    st.record("interaction-unitary-two-routes", worst_u, 1e-10);
}

void check_channel_properties(Suite& st) {
    TruncationDim dim(64);
    int draws = st.full() ? 20 : 8;
    double worst_complete = 0, worst_delta = 0, worst_closed = 0;
    for (int k = 0; k < draws; ++k) {
        Observable a = st.random_observable();
        QubitState pi = st.random_qubit();
        QubitState pf = st.random_qubit();
        if (std::abs(pf.vec().dot(pi.vec())) < 0.1) { --k; continue; }
        QubitState pperp = pf.orthogonal();
        if (std::abs(pperp.vec().dot(pi.vec())) < 1e-6) { --k; continue; }
        double s = st.uniform(0.0, 1.5);
        FockVector pointer = coherent(st.random_phase_amp(1.0), dim);
        auto r1 = postselect_channel(pointer, SelectionPair(pi, pf, a), CouplingSpec::strength(s));
        auto r2 = postselect_channel(pointer, SelectionPair(pi, pperp, a), CouplingSpec::strength(s));
        worst_complete = std::max(worst_complete, std::abs(r1.p + r2.p - 1.0));
    }
    for (int k = 0; k < draws; ++k) {
        double theta = st.uniform(0.05, 2.8);
        double s = st.uniform(0.0, 2.0);
        double r = (k % 2 == 0) ? 0.0 : st.uniform(0.0, 1.0);
        FockVector pointer =
            (r == 0.0) ? vacuum(TruncationDim(128)) : squeezed_vacuum(SqueezeParam(r), TruncationDim(128));
        auto pa = postselect_channel(pointer, sigma_x_selection(theta, st.uniform(0.0, 6.28)),
                                     CouplingSpec::strength(s));
        auto pb = postselect_channel(pointer, sigma_x_selection(theta, st.uniform(0.0, 6.28)),
                                     CouplingSpec::strength(s));
        worst_delta = std::max(worst_delta, std::abs(pa.p - pb.p));
        worst_closed = std::max(worst_closed,
                                std::abs(pa.p - success_probability_closed(theta, 0.0, s, r)));
    }
    st.record("channel-completeness", worst_complete, 1e-10);
    st.record("channel-delta-independence", worst_delta, 1e-12);
    st.record("success-probability-closed-form", worst_closed, 1e-10);
}

void check_protocol_paths(Suite& st) {
    TruncationDim dim(128);
    int draws = st.full() ? 10 : 4;
    double worst = 0;
    for (int k = 0; k < draws; ++k) {
        WeakValue wv{st.random_phase_amp(5.0)};
        double s = st.uniform(0.2, 1.2);
        Complex alpha = st.random_phase_amp(0.8);
        SqueezeParam xi(st.uniform(0.0, 0.8), (k % 2 == 0) ? 0.0 : st.uniform(0.0, 2.0 * M_PI));
        worst = std::max(worst, 1.0 - fidelity(psi1(alpha, xi, s, wv, dim),
                                               psi1_analytic(alpha, xi, s, wv, dim)));
        worst = std::max(worst, 1.0 - fidelity(psi2_squeezed_cat(xi.r, s, wv, dim),
                                               psi2_analytic(xi.r, s, wv, dim)));
        worst = std::max(worst, 1.0 - fidelity(psi3_displaced_cat(alpha, s, wv, dim),
                                               psi3_analytic(alpha, s, wv, dim)));
        worst = std::max(worst, 1.0 - fidelity(psi4_vacuum_cat(s, wv, dim),
                                               psi4_analytic(s, wv, dim)));
    }
    st.record("single-mode-analytic-vs-pipeline", worst, 1e-9);

    // closed-form norm factors against the measured channel probability
    double worst_norm = 0;
    for (int k = 0; k < draws; ++k) {
        WeakValue wv{st.random_phase_amp(3.0)};
        double s = st.uniform(0.2, 1.2), r = st.uniform(0.0, 0.9);
        Complex ov = selection_overlap_for(wv);
        auto res2 = psi2_full(r, s, wv, dim);
        double eta_num = std::abs(ov) / (2.0 * std::sqrt(res2.p));
        worst_norm = std::max(worst_norm, std::abs(eta_num - eta_closed(r, s, wv)));
        auto res3 = psi3_full(st.uniform(0.0, 1.0), s, wv, dim);  // real alpha
        double gamma_num = std::abs(ov) / (2.0 * std::sqrt(res3.p));
        worst_norm = std::max(worst_norm, std::abs(gamma_num - gamma_closed(s, wv)));
    }
    st.record("cat-norm-closed-forms", worst_norm, 1e-10);

    // braiding identity: S^dag(xi) D(s) S(xi) |0> = |s'>
    double worst_braid = 0;
    for (int k = 0; k < draws; ++k) {
        SqueezeParam xi(st.uniform(0.1, 1.0), st.uniform(0.0, 2.0 * M_PI));
        double s = st.uniform(0.2, 1.0);
        Matrix sq = squeeze(xi, dim).m;
        Vector braided = sq.adjoint() * (displacement(s, dim).m * (sq * vacuum(dim).amps));
        auto [ap, sp] = braided_labels(0.0, xi, s);
        worst_braid = std::max(
            worst_braid, 1.0 - fidelity(FockVector(braided, dim), coherent(sp, dim)));
    }
    st.record("squeeze-braiding-identity", worst_braid, 1e-10);

    // photon subtraction identity on squeezed vacuum; a^2 amplifies boundary
    // tails by n^2, so the slow r = 1.2 tail needs extra headroom
    TruncationDim wide(192);
    double worst_ps = 0;
    for (double r : {0.3, 0.8, 1.2}) {
        FockVector sv = squeezed_vacuum(SqueezeParam(r), wide);
        auto sub = photon_subtract(sv, 2);
        Vector target = squeeze(SqueezeParam(r), wide).m
                        * (vacuum(wide).amps
                           - std::sqrt(2.0) * std::tanh(r) * fock_state(2, wide).amps);
        worst_ps = std::max(worst_ps, 1.0 - fidelity(sub.state.normalized(),
                                                     FockVector(target / target.norm(), wide)));
    }
    st.record("photon-subtraction-identity", worst_ps, 1e-10);
}

void check_two_mode_protocols(Suite& st) {
    double worst_phi = 0, worst_kappa = 0, worst_p_inv = 0;
    std::vector<std::tuple<double, double, double>> pts = {{0.5, 1.0, 0.0}, {0.5, 1.0, 10.0}};
    if (st.full()) {
        pts.push_back({1.0, 1.5, 0.0});
        pts.push_back({1.0, 1.5, 10.0});
    }
    for (auto [r, s, w] : pts) {
        int n = (r >= 1.0) ? 96 : 48;
        TruncationDim dim(n);
        WeakValue wv{w};
        SqueezeParam xi(r);
        TwoModeVector pipe = [&] {
            if (st.mutation == VerifyMutation::BsSignFlip) {
                // fault injection: build the pipeline with the splitter angle negated
                FockVector plus = squeezed_vacuum(xi, dim);
                FockVector minus = squeezed_vacuum(xi.negated(), dim);
                auto res = postselect_channel_two_mode(tensor(plus, minus), wv,
                                                       selection_overlap_for(wv),
                                                       CouplingSpec::strength(s), Mode::a);
                return apply_beam_splitter({-M_PI / 4.0, 0.0, 0.0}, res.state);
            }
            return phi_two_mode_cat(xi, s, wv, Mode::a, dim);
        }();
        worst_phi = std::max(worst_phi,
                             1.0 - fidelity(pipe, phi_analytic(xi, s, wv, Mode::a, dim)));
        TwoModeVector pipe_b = phi_two_mode_cat(xi, s, wv, Mode::b, dim);
        worst_phi = std::max(worst_phi,
                             1.0 - fidelity(pipe_b, phi_analytic(xi, s, wv, Mode::b, dim)));
        if (w == 0.0) {
            auto full = phi_full(xi, s, wv, Mode::a, dim);
            double kappa_num = 1.0 / (2.0 * std::sqrt(full.p));  // |ov| = 1 at wv = 0
            worst_kappa = std::max(worst_kappa, std::abs(kappa_num - kappa_closed(r, s)));
        }
        // the splitter must not change the success probability; compare the
        // single-mode value at the same per-mode truncation
        auto single = psi2_full(r, s, wv, dim);
        auto two = phi_full(xi, s, wv, Mode::a, dim);
        worst_p_inv = std::max(worst_p_inv, std::abs(single.p - two.p));
    }
    st.record("phi-analytic-vs-pipeline", worst_phi, 1e-9,
              st.mutation == VerifyMutation::BsSignFlip ? "bs sign flip injected" : "");
    st.record("phi-norm-closed-form", worst_kappa, 1e-10);
    st.record("phi-probability-bs-invariance", worst_p_inv, 1e-12);

    double worst_bell = 0, worst_gamma = 0;
    TruncationDim dim(64);
    for (double w : {0.0, 0.3, 10.0}) {
        for (double s : {1.0, 2.0}) {
            WeakValue wv{w};
            for (BellVariant variant : {BellVariant::Phi3, BellVariant::Phi4}) {
                TwoModeVector pipe = bell_like(s, s, wv, variant, dim);
                worst_bell = std::max(worst_bell,
                                      1.0 - fidelity(pipe, bell_analytic(s, wv, variant, dim)));
            }
            auto full = bell_full(s, s, wv, BellVariant::Phi3, dim);
            Complex ov = selection_overlap_for(wv);
            double gamma_num = std::abs(ov) / (2.0 * std::sqrt(full.p));
            worst_gamma = std::max(worst_gamma, std::abs(gamma_num - gamma_closed(s, wv)));
        }
    }
    st.record("bell-analytic-vs-pipeline", worst_bell, 1e-9);
    st.record("bell-norm-closed-form", worst_gamma, 1e-10);
}

void check_entanglement(Suite& st) {
    // concurrence closed form against the Schmidt oracle
    TruncationDim dim(64);
    double worst_c = 0;
    int grid = st.full() ? 9 : 5;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            double s = 0.25 + (2.25 - 0.25) * i / (grid - 1);
            double w = 10.0 * j / (grid - 1);
            TwoModeVector state = bell_like(s, s, WeakValue{w}, BellVariant::Phi3, dim);
            worst_c = std::max(worst_c, std::abs(pure_state_concurrence(state)
                                                 - concurrence_bell_like(s, w)));
        }
    }
    st.record("concurrence-closed-vs-oracle", worst_c, 1e-8);

    // reduced two-mode squeezed vacuum is thermal: purity 1/cosh(2r)
    double worst_t = 0;
    for (double r : {0.5, 1.0}) {
        TwoModeVector v = tmsv(SqueezeParam(r), TruncationDim(64));
        double purity = reduced_density(v, Mode::a).purity();
        worst_t = std::max(worst_t, std::abs(purity - 1.0 / std::cosh(2.0 * r)));
        worst_t = std::max(worst_t,
                           std::abs(linear_entropy(v) - (1.0 - 1.0 / std::cosh(2.0 * r))));
    }
    st.record("tmsv-thermal-baseline", worst_t, 1e-9);

    // unit weak value leaves a Gaussian pair: entropy equals the baseline
    double worst_b = 0;
    for (double r : {0.5, 1.0}) {
        int n = (r >= 1.0) ? 96 : 48;
        TwoModeVector v = phi_two_mode_cat(SqueezeParam(r), 1.3, WeakValue{1.0}, Mode::a,
                                           TruncationDim(n));
        worst_b = std::max(worst_b, std::abs(linear_entropy(v)
                                             - (1.0 - 1.0 / std::cosh(2.0 * r))));
    }
    st.record("unit-weak-value-entropy-baseline", worst_b, 1e-9);
}

void check_phase_space(Suite& st) {
    TruncationDim dim(64);
    // parity anchors at the origin
    PhaseSpaceGrid origin{-0.05, 0.05, -0.05, 0.05, 3, 3};
    double s = 1.5;
    double worst_anchor = 0;
    worst_anchor = std::max(worst_anchor, std::abs(wigner(ideal_even_cat(s, dim), origin).values(1, 1)
                                                   - 2.0 / M_PI));
    worst_anchor = std::max(worst_anchor, std::abs(wigner(ideal_odd_cat(s, dim), origin).values(1, 1)
                                                   + 2.0 / M_PI));
    worst_anchor = std::max(worst_anchor,
                            std::abs(wigner(yurke_stoler_cat(s, dim), origin).values(1, 1)
                                     - (2.0 / M_PI) * std::exp(-2.0 * s * s)));
    st.record("parity-anchors", worst_anchor, 1e-6);

    // map normalization and the Gaussian noise floor
    PhaseSpaceGrid grid = PhaseSpaceGrid::standard();
    WignerMap wv_vac = wigner(vacuum(dim), grid);
    WignerMap wv_cat = wigner(ideal_even_cat(s, dim), grid);
    double worst_norm = std::abs(wv_vac.values.sum() * grid.cell_area() - 1.0);
    worst_norm = std::max(worst_norm, std::abs(wv_cat.values.sum() * grid.cell_area() - 1.0));
    st.record("wigner-normalization", worst_norm, 1e-3);

    double worst_gauss = std::max(negativity_volume(wv_vac),
                                  negativity_volume(wigner(coherent(1.0, dim), grid)));
    // weak value +-1 collapses the channel to a single displaced branch
    WeakValue unit{1.0};
    worst_gauss = std::max(worst_gauss,
                           negativity_volume(wigner(psi4_vacuum_cat(1.2, unit, dim), grid)));
    if (st.full()) {
        FockVector g2 = psi2_squeezed_cat(1.0, 1.5, WeakValue{-1.0}, TruncationDim(128));
        worst_gauss = std::max(worst_gauss, negativity_volume(wigner(g2, grid)));
    }
    st.record("gaussian-negativity-floor", worst_gauss, 1e-6);

    // joint-parity values stay within the parity bound
    SqueezeParam xi(0.2);
    TwoModeVector phi2 = phi_two_mode_cat(xi, 1.5, WeakValue{10.0}, Mode::b, TruncationDim(48));
    double worst_bound = 0;
    for (SectionKind kind : {SectionKind::ReDiag, SectionKind::ImDiag}) {
        JointParityMap cut = joint_parity_map(phi2, SectionSpec::standard(kind));
        worst_bound = std::max(worst_bound, cut.values.cwiseAbs().maxCoeff() - 1.0);
    }
    st.record("joint-parity-bound", worst_bound, 1e-9);
}

} // namespace

std::vector<CheckResult> run_verification(VerifyLevel level, VerifyMutation mutation) {
    Suite st{level, mutation, {}, std::mt19937{20250809}};
    check_ladder_algebra(st);
    check_op_exp_inverse(st);
    check_gaussian_paths(st);
    check_blocked_vs_dense(st);
    check_beam_splitter(st);
    check_channel_vs_oracle(st);
    check_channel_properties(st);
    check_protocol_paths(st);
    check_two_mode_protocols(st);
    check_entanglement(st);
    check_phase_space(st);
    return st.results;
}

} // namespace ngforge
