#pragma once

#include <optional>

namespace irl_lab {

// All formulas use natural logarithms, so KL values (nats) and the log 2
// terms cancel exactly in the threshold identities.

// Spherical-code size: sqrt(2 pi (n-1)) cos(theta) / sin^{n-2}(theta), with
// the asymptotic (1+o(1)) factor taken as 1. Nonpositive values (cos <= 0)
// are returned as-is; callers treat them as vacuous.
double code_size_lower_bound(int n, double theta);

// Minimum facet count of a simplicial polytope with N vertices in R^{n-1}:
// (n-2) N - (n-1)(n-3).
double facet_count_lower_bound(int n, double n_vertices);

// Ensemble cardinality eta in closed form over (n, eps, beta), using
//   cos(theta) = (e^2 - n(n-2) b^2) / (e^2 + n(n-2)^2 b^2)
//   sin(theta) = b sqrt(n(n-1)(n-2)(2 e^2 + n(n-2)(n-3) b^2)) / (e^2 + n(n-2)^2 b^2).
double ensemble_size_lower_bound(int n, double eps, double beta);

// Facet-normal dot bound 2 sin(theta/2) / sqrt(2(n-2)(1+(n-2) cos theta)).
// Note: this published form overshoots the measured value at code angles;
// the true value for a regular facet is b/sqrt(1+b^2) with b the formula
// value (they agree as theta -> 0). The calculator reports the formula
// verbatim.
double centroid_dot_lower_bound(int n, double theta);

// Per-row KL bound 2 e^2 n / (1 - n e); requires eps < 1/n.
double kl_column_bound(int n, double eps);

// Trajectory KL bound (m-1) * kl_column_bound.
double kl_trajectory_bound(int n, double eps, double m);

// Unclamped Fano expression 1 - ((m-1) 2 e^2 n/(1-n e) + log 2) / log eta.
// m may be fractional (thresholds are real-valued).
double fano_error_expression(int n, double eps, double m, double eta);

// Clamped to [0,1]; eta defaults to ensemble_size_lower_bound(n, eps, beta)
// unless overridden (e.g. the exact simplex facet count n). Throws
// VacuousBoundError when eta <= 1.
double fano_error_lower_bound(int n, double eps, double beta, double m,
                              std::optional<double> ensemble_size_override = std::nullopt);

// Sample thresholds below which the Fano error stays >= 0.5:
//   equal-radius case: (n-1)(0.5 log n - log 2)(1 - sqrt(n/(2(n-1)))) + 1
//   simplex case:      (0.5 log n - log 2)/(2(n-2) n b^2) (1 - n sqrt(n-2) b) + 1.
double sample_threshold_simplex_eq(int n);
double sample_threshold_beta(int n, double beta);

// Every closed-form bound evaluated at one parameter point.
struct BoundReport {
    int n = 0;
    double eps = 0.0;
    double beta = 0.0;
    double theta = 0.0;
    double m = 1.0;
    double n_lower = 0.0;
    double facets_lower = 0.0;
    double eta = 0.0;
    double kl_col = 0.0;
    double kl_traj = 0.0;
    double fano_error_lb = 0.0;
    double m_threshold_equal_radius = 0.0;
    double m_threshold_simplex_radius = 0.0;
    bool n_lower_asymptotic = true;   // (1+o(1)) evaluated as 1
    bool eta_vacuous = false;         // eta <= 1: fano falls back to eta = n
    bool used_simplex_eta = false;
};

BoundReport make_bound_report(int n, double beta, std::optional<double> eps = std::nullopt,
                              double m = 1.0);

}  // namespace irl_lab
