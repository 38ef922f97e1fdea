#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irl_lab/bounds.hpp"
#include "irl_lab/ensemble.hpp"
#include "irl_lab/errors.hpp"
#include "irl_lab/geometry.hpp"
#include "irl_lab/rng.hpp"

using namespace irl_lab;

TEST_CASE("code_size_lower_bound") {
    CHECK(std::fabs(code_size_lower_bound(5, 1.5707963267948966)) <= 1e-12);
    const double theta = std::acos(1.0 / std::sqrt(5.0));
    CHECK(code_size_lower_bound(4, theta) == doctest::Approx(2.427032390694624).epsilon(1e-10));
    CHECK(code_size_lower_bound(4, 1e-3) > 1e6);  // blows up as theta -> 0
}

TEST_CASE("facet_count_lower_bound is the stated linear form") {
    CHECK(facet_count_lower_bound(3, 9.5) == doctest::Approx(9.5).epsilon(1e-14));
    CHECK(facet_count_lower_bound(4, 12) == doctest::Approx(21.0).epsilon(1e-14));
    CHECK(facet_count_lower_bound(7, 7) == doctest::Approx(11.0).epsilon(1e-14));
}

TEST_CASE("ensemble_size_lower_bound closed form") {
    SUBCASE("trig identity on random valid parameters") {
        Rng rng(15);
        for (int t = 0; t < 50; ++t) {
            const int n = 3 + rng.next_below(10);
            const double beta = 1e-4 + 1e-3 * rng.next_unit();
            const auto [lo, hi] = eps_bounds(n, beta);
            const double eps = lo + (hi - lo) * rng.next_unit();
            const double den = eps * eps + n * (n - 2.0) * (n - 2.0) * beta * beta;
            const double c = (eps * eps - n * (n - 2.0) * beta * beta) / den;
            const double s =
                beta *
                std::sqrt(n * (n - 1.0) * (n - 2.0) *
                          (2.0 * eps * eps + n * (n - 2.0) * (n - 3.0) * beta * beta)) /
                den;
            CHECK(s * s + c * c == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("matches the two-step route through theta") {
        Rng rng(16);
        for (int t = 0; t < 50; ++t) {
            const int n = 3 + rng.next_below(10);
            const double beta = 1e-4 + 1e-3 * rng.next_unit();
            const auto [lo, hi] = eps_bounds(n, beta);
            const double eps = lo + (hi - lo) * rng.next_unit();
            const double direct = ensemble_size_lower_bound(n, eps, beta);
            const double theta = theta_from_beta_eps(n, beta, eps);
            const double composed = facet_count_lower_bound(n, code_size_lower_bound(n, theta));
            CHECK(direct == doctest::Approx(composed).epsilon(1e-9));
        }
    }
    SUBCASE("benchmark-scale evaluation is finite and positive") {
        CHECK(ensemble_size_lower_bound(7, 1.0 / std::sqrt(84.0), 0.0032) ==
              doctest::Approx(550.6408329658939).epsilon(1e-9));
    }
}

TEST_CASE("centroid_dot_lower_bound") {
    CHECK(centroid_dot_lower_bound(3, 1.0471975511965976) ==
          doctest::Approx(0.5773502691896258).epsilon(1e-12));
    CHECK_THROWS_AS(centroid_dot_lower_bound(4, 2.9), DegenerateDenominatorError);
}

TEST_CASE("measured facet dot equals b/sqrt(1+b^2) of the formula value") {
    // The formula overshoots the measured dot at real code angles; the exact
    // relation for regular facets is measured = b/sqrt(1+b^2).
    for (int n : {4, 6, 10}) {
        const SphericalCode code = simplex_code(n - 1);
        const double b = centroid_dot_lower_bound(n, min_angle(code));
        const Facet f = with_normals(code, facets_of_code(code)[0], 1.0);
        const double measured = dot(f.normals[0], f.unit_centroid);
        CHECK(measured == doctest::Approx(b / std::sqrt(1.0 + b * b)).epsilon(1e-10));
        CHECK(measured < b);  // the published form is not attained
    }
    const SphericalCode ico = icosahedron_code();
    const double b = centroid_dot_lower_bound(4, min_angle(ico));
    const Facet f = with_normals(ico, facets_of_code(ico)[0], 1.0);
    CHECK(dot(f.normals[0], f.unit_centroid) ==
          doctest::Approx(b / std::sqrt(1.0 + b * b)).epsilon(1e-10));
}

TEST_CASE("kl_column_bound") {
    CHECK(kl_column_bound(5, 0.05) == doctest::Approx(1.0 / 30.0).epsilon(1e-12));
    CHECK(kl_column_bound(5, 1e-8) <= 1e-14);
    CHECK(kl_column_bound(7, 1.0 / std::sqrt(84.0)) ==
          doctest::Approx(0.7055050463303895).epsilon(1e-12));
    CHECK_THROWS_AS(kl_column_bound(5, 0.21), EpsTooLargeError);
}

TEST_CASE("kl_trajectory_bound is linear in m-1") {
    CHECK(kl_trajectory_bound(5, 0.05, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(kl_trajectory_bound(5, 0.05, 2.0) == doctest::Approx(1.0 / 30.0).epsilon(1e-12));
    const double one = kl_trajectory_bound(6, 0.03, 2.0);
    CHECK(kl_trajectory_bound(6, 0.03, 11.0) == doctest::Approx(10.0 * one).epsilon(1e-12));
}

TEST_CASE("fano_error_lower_bound") {
    CHECK(fano_error_lower_bound(7, 0.01, 1e-3, 1.0, 7.0) ==
          doctest::Approx(0.6437928128919779).epsilon(1e-12));
    CHECK(fano_error_lower_bound(7, 0.01, 1e-3, 1e9, 7.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(fano_error_lower_bound(7, 0.01, 1e-3, 5.0, 1.0), VacuousBoundError);
    SUBCASE("nonincreasing in m and within [0,1]") {
        double prev = 1.0;
        for (double m : {1.0, 2.0, 5.0, 17.0, 100.0, 2000.0, 1e6}) {
            const double v = fano_error_lower_bound(5, 0.005, 1e-3, m, 5.0);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("threshold identities") {
    SUBCASE("simplex-radius regime: expression equals 1/2 at the threshold") {
        for (int n : {5, 7, 20, 100}) {
            for (double beta : {1e-4, 3.2e-3}) {
                if (n * std::sqrt(n - 2.0) * beta >= 1.0) continue;
                const double eps = std::sqrt(n - 2.0) * beta;
                const double m = sample_threshold_beta(n, beta);
                CHECK(fano_error_expression(n, eps, m, n) ==
                      doctest::Approx(0.5).epsilon(1e-9));
                // rounding m to an integer moves the value by far less than 2e-2
                CHECK(std::fabs(fano_error_expression(n, eps, std::round(m), n) - 0.5) <= 2e-2);
            }
        }
    }
    SUBCASE("equal-radius regime") {
        for (int n : {5, 7, 20, 100}) {
            const double eps = 1.0 / std::sqrt(2.0 * n * (n - 1.0));
            const double m = sample_threshold_simplex_eq(n);
            CHECK(fano_error_expression(n, eps, m, n) == doctest::Approx(0.5).epsilon(1e-9));
        }
    }
}

TEST_CASE("sample_threshold_simplex_eq") {
    CHECK(sample_threshold_simplex_eq(5) == doctest::Approx(1.0934661689626386).epsilon(1e-12));
    CHECK(sample_threshold_simplex_eq(4) == doctest::Approx(1.0).epsilon(1e-12));
    // Theta(n log n): doubling n slightly more than doubles the threshold
    const double r = sample_threshold_simplex_eq(2000) / sample_threshold_simplex_eq(1000);
    CHECK(r > 2.0);
    CHECK(r < 2.3);
}

TEST_CASE("sample_threshold_beta") {
    CHECK(sample_threshold_beta(7, 0.0032) == doctest::Approx(371.8048239466063).epsilon(1e-12));
    CHECK(sample_threshold_beta(5, 0.0056) == doctest::Approx(113.84102051604908).epsilon(1e-12));
    // beta doubling quarters the threshold up to the (1 - n sqrt(n-2) beta) factor
    const double b = 1e-5;
    const double r = sample_threshold_beta(9, b) / sample_threshold_beta(9, 2.0 * b);
    CHECK(r > 3.99);
    CHECK(r < 4.01);
    CHECK_THROWS_AS(sample_threshold_beta(7, 0.1), BetaTooLargeError);
}

TEST_CASE("make_bound_report") {
    SUBCASE("wide radius keeps the closed-form eta") {
        const BoundReport r = make_bound_report(7, 0.0032, std::nullopt, 10.0);
        CHECK(r.eps == doctest::Approx(1.0 / std::sqrt(84.0)).epsilon(1e-12));
        CHECK_FALSE(r.eta_vacuous);
        CHECK(r.eta > 100.0);
        CHECK(r.fano_error_lb >= 0.0);
        CHECK(r.fano_error_lb <= 1.0);
        CHECK(r.n_lower_asymptotic);
        CHECK(std::isfinite(r.kl_traj));
        CHECK(r.m_threshold_simplex_radius == doctest::Approx(371.8048239466063).epsilon(1e-10));
    }
    SUBCASE("tight radius makes eta vacuous and falls back to the simplex count") {
        const BoundReport r = make_bound_report(7, 0.0032, std::sqrt(5.0) * 0.0032, 10.0);
        CHECK(r.eta_vacuous);
        CHECK(r.used_simplex_eta);
        CHECK(r.fano_error_lb >= 0.0);
    }
}
