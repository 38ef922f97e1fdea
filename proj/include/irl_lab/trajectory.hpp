#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "irl_lab/mdp.hpp"
#include "irl_lab/rng.hpp"

namespace irl_lab {

struct TrajectoryStep {
    int state = 0;
    int action = 0;
    int next_state = 0;
};

// An m-state trajectory has m-1 steps; consecutive steps chain.
struct Trajectory {
    int initial_state = 0;
    std::vector<TrajectoryStep> steps;

    int length_states() const { return static_cast<int>(steps.size()) + 1; }
};

// Uniform initial state; each step picks an action uniformly from the k
// actions (the behavior policy of the sampling model) and the next state
// from that action's row. Deterministic given the seed.
Trajectory sample_trajectory(const IrlInstance& inst, int m, std::uint64_t seed);
Trajectory sample_trajectory(const IrlInstance& inst, int m, Rng& rng);

// Empirical (state, action, next state) counts.
struct TransitionCounts {
    int n = 0, k = 0;
    std::vector<long long> counts;  // k * n * n
    std::vector<long long> visits;  // k * n

    TransitionCounts(int n_, int k_)
        : n(n_), k(k_), counts(static_cast<size_t>(k_) * n_ * n_, 0),
          visits(static_cast<size_t>(k_) * n_, 0) {}

    void add_step(int s, int a, int s2) {
        ++counts[(static_cast<size_t>(a) * n + s) * n + s2];
        ++visits[static_cast<size_t>(a) * n + s];
    }
    void add(const Trajectory& t) {
        for (const auto& st : t.steps) add_step(st.state, st.action, st.next_state);
    }
    long long count(int a, int s, int s2) const {
        return counts[(static_cast<size_t>(a) * n + s) * n + s2];
    }
    long long visit(int a, int s) const { return visits[static_cast<size_t>(a) * n + s]; }
};

// P-hat(i,j) = (count + smoothing) / (visits + n smoothing); rows never
// visited fall back to uniform.
std::vector<StochasticMatrix> estimate_from_counts(const TransitionCounts& counts,
                                                   double smoothing);
std::vector<StochasticMatrix> estimate_transitions(const std::vector<Trajectory>& trajs, int n,
                                                   int k, double smoothing);

// KL divergence of two discrete distributions, nats; 0 log(0/q) = 0.
// Throws AbsoluteContinuityError where p > 0 and q = 0.
double discrete_kl(std::span<const double> p, std::span<const double> q);

// Row-wise KL vector V_i = D(P(i) || Q(i)).
Vec kl_rows(const StochasticMatrix& p, const StochasticMatrix& q);

// Quadratic form (1/2) sum_j (q_j - p_j)^2 / p_j; requires a strictly
// positive p row. Agrees with the exact KL to second order and stays below
// the 2 e^2 n/(1-n e) envelope, but does not dominate the exact KL for the
// constructed row pairs (the third-order term works against it there).
double kl_quadratic_bound(std::span<const double> p_row, std::span<const double> q_row);

// Chain-rule trajectory KL: D(init_p || init_q) + sum_{t<m-1} (init_p P^t) V.
double exact_trajectory_kl(const StochasticMatrix& p, const StochasticMatrix& q, const Vec& init,
                           int m);
double exact_trajectory_kl(const StochasticMatrix& p, const StochasticMatrix& q,
                           const Vec& init_p, const Vec& init_q, int m);

// Enumeration oracle over all n^m state sequences (guard n^m <= 1e7).
double brute_force_trajectory_kl(const StochasticMatrix& p, const StochasticMatrix& q,
                                 const Vec& init, int m);

// nk-state chain over (state, action) pairs under the uniform behavior
// policy: entry ((s,a),(s',a')) = P_a(s,s') / k. Index layout: s*k + a.
StochasticMatrix extended_chain(const IrlInstance& inst);

}  // namespace irl_lab
