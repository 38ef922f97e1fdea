#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irl_lab/ensemble.hpp"
#include "irl_lab/mdp.hpp"

namespace irl_lab {

// Experiment definition, mirrored 1:1 by the JSON config file.
struct ExperimentConfig {
    int n = 7;
    int k = 7;
    double gamma = 0.1;
    double target_beta = 0.0032;
    double beta_window = 0.15;            // relative tolerance on measured beta
    std::vector<long long> m_grid;        // ascending; default 16 log-spaced 10..1e6
    int trials = 100;
    int trajectory_length = 10;           // transitions per sampled trajectory
    std::vector<std::string> solvers = {"ng_russell", "l1_svm"};
    std::uint64_t base_seed = 1;
    std::optional<double> upper_line;     // externally supplied upper bound, plot only
    std::string out_csv;
    std::string out_plot;
    bool fresh_instance = false;          // new instance per trial instead of one per run
    double smoothing = 1e-3;
    bool inject_true_transitions = false; // test mode: solvers see the true matrices
    double ng_lambda = 0.0;               // Ng-Russell L1 penalty
    double ng_r_max = 1.0;                // Ng-Russell reward box
};

std::vector<long long> default_m_grid();

struct ResultRow {
    std::string solver;
    int n = 0, k = 0;
    double gamma = 0.0;
    double instance_beta = 0.0;
    long long m = 0;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
    std::uint64_t seed = 0;

    bool operator==(const ResultRow&) const = default;
};

// P_{a_1} is uniform; every other action's rows are drawn uniformly in the
// (eps-ball around uniform) within the simplex, eps being the inradius. A
// draw is accepted when the max-margin LP value lands inside the window; a
// positive but off-target draw is rescaled toward the target (margins are
// exactly linear in the perturbation scale) and re-certified. Deterministic
// given the seed; throws GenerationTimeoutError after 1e5 draws.
IrlInstance random_separable_instance(int n, int k, double gamma, double target_beta,
                                      double window, std::uint64_t seed);

// Monte Carlo success curves: for each grid point and solver, cfg.trials
// independent trials of (sample m transitions, estimate, solve, check
// against the true instance). Trial g uses seed base_seed + 1 + g, so
// parallel and serial runs emit identical rows. Solver failures count as
// unsuccessful trials.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> parse_csv(const std::string& path);

// Dependency-free SVG line chart: success rate vs log-scaled sample count,
// one series per solver, vertical line at the Fano sample threshold and an
// optional externally supplied upper-bound line.
void emit_plot(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg,
               const std::string& path);

// X position of the plot's threshold line (sample_threshold_beta of cfg).
double plot_threshold_x(const ExperimentConfig& cfg);

// Worker pool size: IRL_LAB_THREADS when set, hardware concurrency otherwise.
int worker_count();

// Empirical error of the maximum-likelihood ensemble-member classifier fed
// one m-state trajectory per trial (uniform prior over members).
double ml_identification_error(const std::vector<HardInstance>& ensemble, int m, int trials,
                               std::uint64_t seed);

}  // namespace irl_lab
