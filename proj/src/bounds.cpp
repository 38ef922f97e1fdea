#include "irl_lab/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "irl_lab/ensemble.hpp"
#include "irl_lab/errors.hpp"

namespace irl_lab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double code_size_lower_bound(int n, double theta) {
    if (n < 3) throw DimensionMismatchError("code_size_lower_bound: n must be >= 3");
    const double s = std::sin(theta);
    return std::sqrt(kTwoPi * (n - 1.0)) * std::cos(theta) / std::pow(s, static_cast<double>(n - 2));
}

double facet_count_lower_bound(int n, double n_vertices) {
    if (n < 3) throw DimensionMismatchError("facet_count_lower_bound: n must be >= 3");
    return (n - 2.0) * n_vertices - (n - 1.0) * (n - 3.0);
}

double ensemble_size_lower_bound(int n, double eps, double beta) {
    if (n < 3) throw DimensionMismatchError("ensemble_size_lower_bound: n must be >= 3");
    const double nn = n;
    const double e2 = eps * eps, b2 = beta * beta;
    const double den = e2 + nn * (nn - 2.0) * (nn - 2.0) * b2;
    const double cos_theta = (e2 - nn * (nn - 2.0) * b2) / den;
    const double sin_theta =
        beta *
        std::sqrt(nn * (nn - 1.0) * (nn - 2.0) * (2.0 * e2 + nn * (nn - 2.0) * (nn - 3.0) * b2)) /
        den;
    const double n_vertices = std::sqrt(kTwoPi * (nn - 1.0)) * cos_theta /
                              std::pow(sin_theta, static_cast<double>(n - 2));
    return facet_count_lower_bound(n, n_vertices);
}

double centroid_dot_lower_bound(int n, double theta) {
    if (n < 3) throw DimensionMismatchError("centroid_dot_lower_bound: n must be >= 3");
    const double c = 1.0 + (n - 2.0) * std::cos(theta);
    if (c <= 0.0)
        throw DegenerateDenominatorError("centroid_dot_lower_bound: 1 + (n-2) cos(theta) <= 0");
    return 2.0 * std::sin(theta / 2.0) / std::sqrt(2.0 * (n - 2.0) * c);
}

double kl_column_bound(int n, double eps) {
    if (eps <= 0.0) throw Error("kl_column_bound: eps must be positive");
    if (n * eps >= 1.0) throw EpsTooLargeError("kl_column_bound: requires eps < 1/n");
    return 2.0 * eps * eps * n / (1.0 - n * eps);
}

double kl_trajectory_bound(int n, double eps, double m) {
    if (m < 1.0) throw Error("kl_trajectory_bound: m must be >= 1");
    return (m - 1.0) * kl_column_bound(n, eps);
}

double fano_error_expression(int n, double eps, double m, double eta) {
    return 1.0 - (kl_trajectory_bound(n, eps, m) + std::log(2.0)) / std::log(eta);
}

double fano_error_lower_bound(int n, double eps, double beta, double m,
                              std::optional<double> ensemble_size_override) {
    const double eta =
        ensemble_size_override ? *ensemble_size_override : ensemble_size_lower_bound(n, eps, beta);
    if (eta <= 1.0) throw VacuousBoundError("fano_error_lower_bound: eta <= 1");
    return std::clamp(fano_error_expression(n, eps, m, eta), 0.0, 1.0);
}

double sample_threshold_simplex_eq(int n) {
    if (n < 3) throw DimensionMismatchError("sample_threshold_simplex_eq: n must be >= 3");
    const double nn = n;
    return (nn - 1.0) * (0.5 * std::log(nn) - std::log(2.0)) *
               (1.0 - std::sqrt(nn / (2.0 * (nn - 1.0)))) +
           1.0;
}

double sample_threshold_beta(int n, double beta) {
    if (n < 3) throw DimensionMismatchError("sample_threshold_beta: n must be >= 3");
    if (beta <= 0.0) throw Error("sample_threshold_beta: beta must be positive");
    const double nn = n;
    const double lin = nn * std::sqrt(nn - 2.0) * beta;
    if (lin >= 1.0) throw BetaTooLargeError("sample_threshold_beta: requires n sqrt(n-2) beta < 1");
    return (0.5 * std::log(nn) - std::log(2.0)) / (2.0 * (nn - 2.0) * nn * beta * beta) *
               (1.0 - lin) +
           1.0;
}

BoundReport make_bound_report(int n, double beta, std::optional<double> eps, double m) {
    BoundReport r;
    r.n = n;
    r.beta = beta;
    r.eps = eps ? *eps : default_eps(n, beta);
    r.m = m;
    r.theta = theta_from_beta_eps(n, beta, r.eps);
    r.n_lower = code_size_lower_bound(n, r.theta);
    r.facets_lower = facet_count_lower_bound(n, r.n_lower);
    r.eta = ensemble_size_lower_bound(n, r.eps, r.beta);
    r.kl_col = kl_column_bound(n, r.eps);
    r.kl_traj = kl_trajectory_bound(n, r.eps, m);
    double eta_eff = r.eta;
    if (r.eta <= 1.0) {
        // The closed-form eta is vacuous at this scale; fall back to the exact
        // simplex facet count.
        r.eta_vacuous = true;
        r.used_simplex_eta = true;
        eta_eff = n;
    }
    r.fano_error_lb = fano_error_lower_bound(n, r.eps, r.beta, m, eta_eff);
    r.m_threshold_equal_radius = sample_threshold_simplex_eq(n);
    r.m_threshold_simplex_radius = sample_threshold_beta(n, beta);
    return r;
}

}  // namespace irl_lab
