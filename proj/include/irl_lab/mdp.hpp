#pragma once

#include <optional>
#include <vector>

#include "irl_lab/linalg.hpp"

namespace irl_lab {

// Right-stochastic transition matrix: entry (i,j) is the probability of
// moving from state i to state j. Construct through validate_stochastic.
struct StochasticMatrix {
    int n = 0;
    Mat p;

    std::span<const double> row(int i) const { return p.row(i); }
};

// Validates nonnegativity and row sums. Rows are renormalized only when the
// row-sum deviation is at most 1e-9; larger deviations are an error.
StochasticMatrix validate_stochastic(const Mat& m);

struct RewardVector {
    Vec values;
};

// Scales to unit 1-norm; throws ZeroRewardError on a zero vector.
Vec normalize_l1(const Vec& r);

struct Policy {
    std::vector<int> action_of_state;
    bool operator==(const Policy&) const = default;
};

// An MDP with the reward removed: the input to an IRL problem. Action 0 is
// the designated optimal action a_1. An instance may carry a certified
// reward/margin pair produced by the hard-ensemble construction.
struct IrlInstance {
    int n = 0;
    int k = 0;
    double gamma = 0.0;
    std::vector<StochasticMatrix> transitions;  // size k, [0] = P_{a_1}
    std::optional<Vec> certified_reward;
    std::optional<double> certified_beta;
};

// Checks the structural invariants (k >= 2, gamma in (0,1), square matrices
// of matching n, certified pair consistency) and returns the instance.
IrlInstance make_instance(int n, int k, double gamma, std::vector<StochasticMatrix> transitions,
                          std::optional<Vec> certified_reward = std::nullopt,
                          std::optional<double> certified_beta = std::nullopt);

// Moves the given action to index 0 (the designated optimal slot). This is
// the only supported form of optimal-policy relabeling.
IrlInstance reindex_actions(const IrlInstance& inst, int new_optimal_action);

// V = (I - gamma P_pi)^{-1} R, solved directly.
Vec policy_value(const StochasticMatrix& p_pi, const Vec& reward, double gamma);

// Margin matrix of the Bellman-optimality condition: entry (i, a-1) equals
// (P_{a_1}(i) - P_a(i)) (I - gamma P_{a_1})^{-1} R for a = 1..k-1.
// Action a_1 is Bellman-optimal iff all entries are >= 0, and uniquely
// optimal iff all are strictly positive. One shared solve is used.
Mat bellman_margins(const IrlInstance& inst, const Vec& reward);

// Minimum Bellman margin of R normalized to unit 1-norm. The instance is
// beta-strict separable via R iff the result is >= beta.
double separability_margin(const IrlInstance& inst, const Vec& reward);

struct BetaResult {
    double beta = 0.0;
    Vec reward;
};

// Largest achievable separability margin and an achieving reward, via the
// max-margin LP over ||R||_1 <= 1 (variable split R = R+ - R-). A result
// <= 0 means no reward makes a_1 strictly optimal.
BetaResult measure_beta(const IrlInstance& inst);

// All Bellman-optimal policies, by exhaustive policy enumeration when
// k^n <= 10^6 and by exact policy iteration plus greedy-tie products
// otherwise. Throws TooLargeError when neither route is viable.
std::vector<Policy> brute_force_optimal_policies(const IrlInstance& inst, const Vec& reward);

// Strictness tolerance: margins above this count as strictly positive.
inline constexpr double kStrictMarginTol = 1e-12;

}  // namespace irl_lab
