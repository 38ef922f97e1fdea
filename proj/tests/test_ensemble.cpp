#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "irl_lab/ensemble.hpp"
#include "irl_lab/errors.hpp"
#include "irl_lab/mdp.hpp"

using namespace irl_lab;

TEST_CASE("theta_from_beta_eps hits the simplex angle at the tight radius") {
    for (int n : {3, 5, 7, 12}) {
        const double beta = 1e-3;
        const double eps = std::sqrt(n - 2.0) * beta;
        const double theta = theta_from_beta_eps(n, beta, eps);
        CHECK(std::cos(theta) == doctest::Approx(-1.0 / (n - 1)).epsilon(1e-12));
    }
}

TEST_CASE("theta matches the closed-form cos identity") {
    // cos(theta) = (e^2 - n(n-2)b^2)/(e^2 + n(n-2)^2 b^2)
    const int n = 7;
    const double beta = 0.0032, eps = 1.0 / std::sqrt(84.0);
    const double theta = theta_from_beta_eps(n, beta, eps);
    const double den = eps * eps + n * (n - 2.0) * (n - 2.0) * beta * beta;
    const double expected = (eps * eps - n * (n - 2.0) * beta * beta) / den;
    CHECK(std::cos(theta) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("theta shrinks with beta") {
    const double t1 = theta_from_beta_eps(6, 1e-2, 0.05);
    const double t2 = theta_from_beta_eps(6, 1e-3, 0.05);
    const double t3 = theta_from_beta_eps(6, 1e-6, 0.05);
    CHECK(t1 > t2);
    CHECK(t2 > t3);
    CHECK(t3 < 1e-3);
}

TEST_CASE("eps_bounds values and errors") {
    auto [lo4, hi4] = eps_bounds(4, 0.01);
    CHECK(lo4 == doctest::Approx(0.014142135623730952).epsilon(1e-12));
    CHECK(hi4 == doctest::Approx(0.2886751345948129).epsilon(1e-12));
    auto [lo7, hi7] = eps_bounds(7, 0.0032);
    CHECK(lo7 == doctest::Approx(0.007155417527999328).epsilon(1e-12));
    CHECK(hi7 == doctest::Approx(0.1543033499620919).epsilon(1e-12));
    // degenerate interval is accepted, beyond it is not
    const double beta_edge = hi4 / std::sqrt(2.0);
    CHECK_NOTHROW(eps_bounds(4, beta_edge * (1.0 - 1e-12)));
    CHECK_THROWS_AS(eps_bounds(4, beta_edge * 1.01), BetaTooLargeError);
}

TEST_CASE("make_config defaults and validation") {
    const EnsembleConfig cfg = make_config(5, 0.1, 1e-3);
    CHECK(cfg.eps == doctest::Approx(1.0 / std::sqrt(40.0)).epsilon(1e-12));
    CHECK(cfg.theta == doctest::Approx(theta_from_beta_eps(5, 1e-3, cfg.eps)).epsilon(1e-12));
    CHECK_THROWS(make_config(5, 1.5, 1e-3));
    CHECK_THROWS(make_config(5, 0.1, 1e-3, std::nullopt, CodeKind::Icosahedron));
    CHECK_THROWS(make_config(5, 0.1, 1e-3, 0.9));  // above the inradius
}

TEST_CASE("build_ensemble facet counts") {
    CHECK(build_ensemble(make_config(5, 0.1, 1e-3)).size() == 5);
    CHECK(build_ensemble(make_config(4, 0.1, 1e-3, std::nullopt, CodeKind::Icosahedron)).size() ==
          20);
    CHECK(build_ensemble(make_config(7, 0.1, 0.0032, std::sqrt(5.0) * 0.0032)).size() == 7);
}

TEST_CASE("constructed instances satisfy the row structure") {
    const EnsembleConfig cfg = make_config(5, 0.1, 1e-3);
    const auto ensemble = build_ensemble(cfg);
    for (const auto& hi : ensemble) {
        const IrlInstance& inst = hi.instance;
        REQUIRE(inst.k == 2);
        // action 0 is uniform
        for (int i = 0; i < inst.n; ++i)
            for (int j = 0; j < inst.n; ++j)
                CHECK(inst.transitions[0].p(i, j) == doctest::Approx(0.2).epsilon(1e-14));
        // every a_2 row is exactly eps away from uniform, rows are distributions
        for (int i = 0; i < inst.n; ++i) {
            Vec diff(inst.n);
            double sum = 0.0;
            for (int j = 0; j < inst.n; ++j) {
                diff[j] = inst.transitions[1].p(i, j) - 0.2;
                CHECK(inst.transitions[1].p(i, j) >= 0.0);
                sum += inst.transitions[1].p(i, j);
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(norm2(diff) == doctest::Approx(cfg.eps).epsilon(1e-9));
        }
        // the final row duplicates the first normal's row
        for (int j = 0; j < inst.n; ++j)
            CHECK(inst.transitions[1].p(inst.n - 1, j) ==
                  doctest::Approx(inst.transitions[1].p(0, j)).epsilon(1e-12));
        CHECK(norm1(hi.reward) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("simplex own-reward margin has the exact closed form") {
    // margin = eps * n / (2 sqrt(2) (n-1)) for every facet and row
    for (int n : {4, 5, 7, 10}) {
        for (double beta : {1e-3, 3.2e-3}) {
            const double eps = std::sqrt(n - 2.0) * beta;
            const auto ensemble = build_ensemble(make_config(n, 0.1, beta, eps));
            const double expected = eps * n / (2.0 * std::sqrt(2.0) * (n - 1));
            for (const auto& hi : ensemble)
                CHECK(separability_margin(hi.instance, hi.reward) ==
                      doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("margins scale linearly in eps") {
    const int n = 6;
    const double beta = 1e-3;
    const auto low = build_ensemble(make_config(n, 0.1, beta, 0.02));
    const auto high = build_ensemble(make_config(n, 0.1, beta, 0.04));
    const double m_low = separability_margin(low[0].instance, low[0].reward);
    const double m_high = separability_margin(high[0].instance, high[0].reward);
    CHECK(m_high == doctest::Approx(2.0 * m_low).epsilon(1e-10));
}

TEST_CASE("verify_ensemble certifies fresh ensembles at the default radius") {
    for (const EnsembleConfig& cfg :
         {make_config(4, 0.1, 1e-3), make_config(5, 0.1, 1e-3), make_config(7, 0.1, 3.2e-3),
          make_config(4, 0.1, 1e-3, std::nullopt, CodeKind::Icosahedron)}) {
        const auto ensemble = build_ensemble(cfg);
        const VerificationReport rep = verify_ensemble(ensemble);
        CHECK(rep.own_ok);
        CHECK(rep.cross_ok);
        CHECK(rep.norms_ok);
        CHECK(rep.worst_cross_margin < 0.0);
    }
}

TEST_CASE("verify_ensemble flags a swapped reward") {
    auto ensemble = build_ensemble(make_config(5, 0.1, 1e-3));
    ensemble[0].reward = ensemble[1].reward;
    const VerificationReport rep = verify_ensemble(ensemble);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("single-instance ensemble passes vacuously on cross checks") {
    const auto ensemble = build_ensemble(make_config(5, 0.1, 1e-3));
    const std::vector<HardInstance> solo(ensemble.begin(), ensemble.begin() + 1);
    const VerificationReport rep = verify_ensemble(solo);
    CHECK(rep.cross_ok);
}

TEST_CASE("cross-exclusion holds pairwise") {
    const auto ensemble = build_ensemble(make_config(5, 0.1, 1e-3));
    for (size_t i = 0; i < ensemble.size(); ++i)
        for (size_t j = 0; j < ensemble.size(); ++j) {
            if (i == j) continue;
            CHECK(separability_margin(ensemble[i].instance, ensemble[j].reward) < 0.0);
        }
}

TEST_CASE("the constructed pair is uniquely optimal under its reward") {
    const auto ensemble = build_ensemble(make_config(4, 0.1, 1e-3));
    const auto optimal = brute_force_optimal_policies(ensemble[0].instance, ensemble[0].reward);
    REQUIRE(optimal.size() == 1);
    for (int a : optimal[0].action_of_state) CHECK(a == 0);
}

TEST_CASE("policy iteration route handles large policy spaces") {
    // 2^21 policies exceed the enumeration guard, so the exact policy
    // iteration route answers; strict margins still give a unique optimum.
    const auto ensemble = build_ensemble(make_config(21, 0.1, 1e-4));
    const auto optimal = brute_force_optimal_policies(ensemble[0].instance, ensemble[0].reward);
    REQUIRE(optimal.size() == 1);
    for (int a : optimal[0].action_of_state) CHECK(a == 0);
    // a fully tied instance makes the optimal set itself too large to return
    IrlInstance tied = ensemble[0].instance;
    tied.transitions[1] = tied.transitions[0];
    CHECK_THROWS_AS(brute_force_optimal_policies(tied, ensemble[0].reward), TooLargeError);
}

TEST_CASE("construction is deterministic") {
    const EnsembleConfig cfg = make_config(6, 0.1, 2e-3);
    const auto a = build_ensemble(cfg);
    const auto b = build_ensemble(cfg);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].instance.transitions[1].p == b[i].instance.transitions[1].p);
        CHECK(a[i].reward == b[i].reward);
    }
}

TEST_CASE("rows leaving the simplex raise InvalidRow") {
    EnsembleConfig cfg = make_config(4, 0.1, 1e-3);
    cfg.eps = 0.5;  // forged: far above the inradius
    const SphericalCode code = simplex_code(3);
    const Facet f = with_normals(code, facets_of_code(code)[0], cfg.eps);
    CHECK_THROWS_AS(build_instance(cfg, code, f), InvalidRowError);
}

TEST_CASE("measure_beta on a constructed instance follows eps/sqrt(2)") {
    const EnsembleConfig cfg = make_config(5, 0.1, 1e-3);
    const auto ensemble = build_ensemble(cfg);
    const BetaResult b = measure_beta(ensemble[0].instance);
    CHECK(b.beta == doctest::Approx(cfg.eps / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(b.beta >= cfg.beta);
}
