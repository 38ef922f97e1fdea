#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irl_lab/bounds.hpp"
#include "irl_lab/ensemble.hpp"
#include "irl_lab/errors.hpp"
#include "irl_lab/trajectory.hpp"

using namespace irl_lab;

namespace {

StochasticMatrix near_uniform(int n, Rng& rng, double spread) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            m(i, j) = 1.0 + spread * rng.next_unit();
            sum += m(i, j);
        }
        for (int j = 0; j < n; ++j) m(i, j) /= sum;
    }
    return validate_stochastic(m);
}

IrlInstance two_action(const StochasticMatrix& a, const StochasticMatrix& b, double gamma) {
    return make_instance(a.n, 2, gamma, {a, b});
}

}  // namespace

TEST_CASE("sample_trajectory basics") {
    Rng rng(3);
    const StochasticMatrix u = near_uniform(4, rng, 0.3);
    const IrlInstance inst = two_action(u, near_uniform(4, rng, 0.3), 0.1);
    SUBCASE("m=1 has no steps") {
        const Trajectory t = sample_trajectory(inst, 1, 99u);
        CHECK(t.steps.empty());
        CHECK(t.length_states() == 1);
    }
    SUBCASE("absorbing chains stay put") {
        const StochasticMatrix id = validate_stochastic(Mat::identity(4));
        const IrlInstance fixed = two_action(id, id, 0.1);
        const Trajectory t = sample_trajectory(fixed, 20, 7u);
        for (const auto& s : t.steps) {
            CHECK(s.state == t.initial_state);
            CHECK(s.next_state == t.initial_state);
        }
    }
    SUBCASE("same seed, same trajectory; chained steps") {
        const Trajectory a = sample_trajectory(inst, 15, 123u);
        const Trajectory b = sample_trajectory(inst, 15, 123u);
        REQUIRE(a.steps.size() == b.steps.size());
        for (size_t i = 0; i < a.steps.size(); ++i) {
            CHECK(a.steps[i].state == b.steps[i].state);
            CHECK(a.steps[i].action == b.steps[i].action);
            CHECK(a.steps[i].next_state == b.steps[i].next_state);
            if (i > 0) CHECK(a.steps[i].state == a.steps[i - 1].next_state);
        }
    }
    SUBCASE("initial states are uniform across seeds") {
        const int n = 4, trials = 100000;
        std::vector<int> counts(n, 0);
        for (int s = 0; s < trials; ++s) ++counts[sample_trajectory(inst, 1, 1000u + s).initial_state];
        const double sigma = std::sqrt(trials * (1.0 / n) * (1.0 - 1.0 / n));
        for (int c : counts) CHECK(std::fabs(c - trials / n) <= 3.0 * sigma);
    }
}

TEST_CASE("estimate_transitions") {
    SUBCASE("exact proportions reproduce the truth with zero smoothing") {
        TransitionCounts c(3, 2);
        // action 0, state 0: P = (0.5, 0.25, 0.25) scaled by 8 visits
        c.counts = {4, 2, 2, 0, 3, 0, 1, 1, 1,   // action 0 rows
                    2, 0, 0, 0, 2, 0, 0, 0, 2};  // action 1 diagonal-ish
        c.visits = {8, 3, 3, 2, 2, 2};
        const auto est = estimate_from_counts(c, 0.0);
        CHECK(est[0].p(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(est[0].p(0, 1) == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(est[0].p(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(est[1].p(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("no data falls back to uniform rows") {
        const auto est = estimate_transitions({}, 4, 3, 0.0);
        for (const auto& m : est)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) CHECK(m.p(i, j) == doctest::Approx(0.25));
    }
    SUBCASE("smoothing blends toward uniform") {
        TransitionCounts c(2, 1);
        c.counts = {3, 1, 0, 0};
        c.visits = {4, 0};
        const auto est = estimate_from_counts(c, 0.5);
        CHECK(est[0].p(0, 0) == doctest::Approx(3.5 / 5.0).epsilon(1e-14));
        CHECK(est[0].p(0, 1) == doctest::Approx(1.5 / 5.0).epsilon(1e-14));
    }
    SUBCASE("estimates converge with more data") {
        Rng rng(8);
        const StochasticMatrix tr = near_uniform(3, rng, 0.8);
        const IrlInstance inst = two_action(tr, tr, 0.1);
        auto max_err = [&](int m) {
            Rng sampler(555);
            TransitionCounts c(3, 2);
            c.add(sample_trajectory(inst, m, sampler));
            const auto est = estimate_from_counts(c, 0.0);
            double err = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        err = std::max(err, std::fabs(est[a].p(i, j) - tr.p(i, j)));
            return err;
        };
        CHECK(max_err(200000) < max_err(500));
        CHECK(max_err(200000) < 0.02);
    }
}

TEST_CASE("kl_rows") {
    Rng rng(12);
    const StochasticMatrix p = near_uniform(3, rng, 0.5);
    SUBCASE("zero against itself") {
        for (double v : kl_rows(p, p)) CHECK(std::fabs(v) <= 1e-15);
    }
    SUBCASE("frozen two-state value") {
        Mat a(2, 2), b(2, 2, 0.5);
        a(0, 0) = 0.6;
        a(0, 1) = 0.4;
        a(1, 0) = 0.5;
        a(1, 1) = 0.5;
        const Vec v = kl_rows(validate_stochastic(a), validate_stochastic(b));
        CHECK(v[0] == doctest::Approx(0.020135513550688863).epsilon(1e-12));
        CHECK(std::fabs(v[1]) <= 1e-15);
    }
    SUBCASE("absolute continuity is enforced") {
        const StochasticMatrix id = validate_stochastic(Mat::identity(2));
        Mat q(2, 2);
        q(0, 0) = 0.0;
        q(0, 1) = 1.0;
        q(1, 0) = 0.5;
        q(1, 1) = 0.5;
        CHECK_THROWS_AS(kl_rows(id, validate_stochastic(q)), AbsoluteContinuityError);
    }
}

TEST_CASE("kl_quadratic_bound dominates the exact KL near uniform") {
    CHECK(kl_quadratic_bound(Vec{0.6, 0.4}, Vec{0.6, 0.4}) == doctest::Approx(0.0));
    CHECK(kl_quadratic_bound(Vec{0.6, 0.4}, Vec{0.5, 0.5}) ==
          doctest::Approx(0.020833333333333332).epsilon(1e-12));
    CHECK(kl_quadratic_bound(Vec{0.6, 0.4}, Vec{0.5, 0.5}) >= 0.020135513550688863);
    CHECK_THROWS_AS(kl_quadratic_bound(Vec{1.0, 0.0}, Vec{0.5, 0.5}), ZeroEntryError);
}

TEST_CASE("ensemble rows obey the per-row envelope") {
    // The quadratic form does NOT dominate the exact KL on these pairs (its
    // third-order term is adversarial here); the 2 e^2 n/(1-n e) envelope
    // does, and the quadratic form always sits below the envelope.
    const EnsembleConfig cfg = make_config(5, 0.1, 1e-3);
    const auto ensemble = build_ensemble(cfg);
    const double row_bound = kl_column_bound(cfg.n, cfg.eps);
    double worst_overshoot = -1e300;
    for (size_t i = 0; i < ensemble.size(); ++i)
        for (size_t j = 0; j < ensemble.size(); ++j) {
            if (i == j) continue;
            const auto& pi = ensemble[i].instance.transitions[1];
            const auto& pj = ensemble[j].instance.transitions[1];
            const Vec v = kl_rows(pi, pj);
            for (int r = 0; r < cfg.n; ++r) {
                const double quad = kl_quadratic_bound(pi.row(r), pj.row(r));
                CHECK(v[r] <= row_bound + 1e-12);
                CHECK(quad <= row_bound + 1e-12);
                worst_overshoot = std::max(worst_overshoot, v[r] - quad);
            }
        }
    CHECK(worst_overshoot > 0.0);  // exact KL exceeds the quadratic form here
    // the overshoot decays like eps^3: shrinking eps by 4 shrinks it > 16x
    const EnsembleConfig small = make_config(5, 0.1, 1e-3, cfg.eps / 4.0);
    const auto tight = build_ensemble(small);
    double small_overshoot = -1e300;
    for (size_t i = 0; i < tight.size(); ++i)
        for (size_t j = 0; j < tight.size(); ++j) {
            if (i == j) continue;
            const auto& pi = tight[i].instance.transitions[1];
            const auto& pj = tight[j].instance.transitions[1];
            const Vec v = kl_rows(pi, pj);
            for (int r = 0; r < small.n; ++r)
                small_overshoot =
                    std::max(small_overshoot, v[r] - kl_quadratic_bound(pi.row(r), pj.row(r)));
        }
    CHECK(small_overshoot < worst_overshoot / 16.0);
}

TEST_CASE("exact chain-rule KL matches enumeration") {
    Rng rng(21);
    SUBCASE("m=1 and equal chains are zero") {
        const StochasticMatrix p = near_uniform(3, rng, 0.4);
        const Vec init(3, 1.0 / 3.0);
        CHECK(exact_trajectory_kl(p, p, init, 7) == doctest::Approx(0.0));
        CHECK(exact_trajectory_kl(p, near_uniform(3, rng, 0.4), init, 1) == doctest::Approx(0.0));
    }
    SUBCASE("m=2 equals the hand chain rule") {
        const StochasticMatrix p = near_uniform(3, rng, 0.4);
        const StochasticMatrix q = near_uniform(3, rng, 0.4);
        const Vec init = {0.2, 0.5, 0.3};
        const Vec v = kl_rows(p, q);
        CHECK(exact_trajectory_kl(p, q, init, 2) == doctest::Approx(dot(init, v)).epsilon(1e-14));
        CHECK(brute_force_trajectory_kl(p, q, init, 2) ==
              doctest::Approx(dot(init, v)).epsilon(1e-12));
    }
    SUBCASE("random small chains") {
        for (int t = 0; t < 30; ++t) {
            const int n = 2 + t % 2;
            const int m = 2 + t % 4;
            const StochasticMatrix p = near_uniform(n, rng, 0.6);
            const StochasticMatrix q = near_uniform(n, rng, 0.6);
            Vec init(n, 1.0 / n);
            const double exact = exact_trajectory_kl(p, q, init, m);
            const double brute = brute_force_trajectory_kl(p, q, init, m);
            CHECK(exact == doctest::Approx(brute).epsilon(1e-10));
        }
    }
    SUBCASE("differing initial distributions add their divergence") {
        const StochasticMatrix p = near_uniform(2, rng, 0.3);
        const Vec ip = {0.7, 0.3}, iq = {0.4, 0.6};
        CHECK(exact_trajectory_kl(p, p, ip, iq, 5) ==
              doctest::Approx(discrete_kl(ip, iq)).epsilon(1e-12));
    }
    SUBCASE("enumeration guard") {
        const StochasticMatrix p = near_uniform(10, rng, 0.2);
        CHECK_THROWS_AS(brute_force_trajectory_kl(p, p, Vec(10, 0.1), 8), TooLargeError);
    }
}

TEST_CASE("trajectory KL of ensemble pairs respects the linear bound") {
    const EnsembleConfig cfg = make_config(4, 0.1, 1e-3);
    const auto ensemble = build_ensemble(cfg);
    const Vec uniform(cfg.n, 1.0 / cfg.n);
    const double coef = kl_column_bound(cfg.n, cfg.eps);
    for (int m : {1, 2, 5, 17, 50}) {
        const double kl = exact_trajectory_kl(ensemble[0].instance.transitions[1],
                                              ensemble[2].instance.transitions[1], uniform, m);
        CHECK(kl <= (m - 1) * coef + 1e-9);
    }
}

TEST_CASE("construction difference matrix has unit zero-sum rows") {
    const EnsembleConfig cfg = make_config(5, 0.1, 1e-3);
    const auto ensemble = build_ensemble(cfg);
    const auto& inst = ensemble[0].instance;
    for (int i = 0; i < cfg.n; ++i) {
        Vec u(cfg.n);
        double row_sum = 0.0;
        for (int j = 0; j < cfg.n; ++j) {
            u[j] = (inst.transitions[1].p(i, j) - inst.transitions[0].p(i, j)) / cfg.eps;
            row_sum += u[j];
        }
        CHECK(std::fabs(row_sum) <= 1e-10);
        CHECK(norm2(u) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("extended_chain") {
    Rng rng(31);
    SUBCASE("single action reduces to the base chain") {
        const StochasticMatrix p = near_uniform(3, rng, 0.4);
        IrlInstance inst;
        inst.n = 3;
        inst.k = 1;
        inst.gamma = 0.1;
        inst.transitions = {p};
        const StochasticMatrix ext = extended_chain(inst);
        REQUIRE(ext.n == 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(ext.p(i, j) == doctest::Approx(p.p(i, j)));
    }
    SUBCASE("rows are stochastic") {
        const IrlInstance inst = two_action(near_uniform(3, rng, 0.4), near_uniform(3, rng, 0.4), 0.1);
        const StochasticMatrix ext = extended_chain(inst);
        REQUIRE(ext.n == 6);
        for (int i = 0; i < 6; ++i) {
            double s = 0.0;
            for (int j = 0; j < 6; ++j) s += ext.p(i, j);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("the trajectory bound carries over to extended chains") {
        const EnsembleConfig cfg = make_config(4, 0.1, 1e-3);
        const auto ensemble = build_ensemble(cfg);
        const StochasticMatrix e0 = extended_chain(ensemble[0].instance);
        const StochasticMatrix e1 = extended_chain(ensemble[1].instance);
        const Vec uniform(cfg.n * 2, 1.0 / (cfg.n * 2));
        const double coef = kl_column_bound(cfg.n, cfg.eps);
        for (int m : {2, 5, 12, 20})
            CHECK(exact_trajectory_kl(e0, e1, uniform, m) <= (m - 1) * coef + 1e-9);
    }
}
