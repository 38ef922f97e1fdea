#include "irl_lab/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irl_lab/errors.hpp"
#include "irl_lab/lp.hpp"

namespace irl_lab {

StochasticMatrix validate_stochastic(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionMismatchError("validate_stochastic: matrix not square");
    const int n = m.rows();
    StochasticMatrix out{n, m};
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double v = out.p(i, j);
            if (v < 0.0) {
                if (v < -1e-12)
                    throw NegativeEntryError("validate_stochastic: negative entry at (" +
                                             std::to_string(i) + "," + std::to_string(j) + ")");
                out.p(i, j) = 0.0;
            }
            sum += out.p(i, j);
        }
        if (std::fabs(sum - 1.0) > 1e-9)
            throw RowSumViolationError("validate_stochastic: row " + std::to_string(i) +
                                       " sums to " + std::to_string(sum));
        if (sum != 1.0)
            for (int j = 0; j < n; ++j) out.p(i, j) /= sum;
    }
    return out;
}

Vec normalize_l1(const Vec& r) {
    const double s = norm1(r);
    if (s <= 0.0) throw ZeroRewardError("normalize_l1: zero reward");
    return scaled(r, 1.0 / s);
}

IrlInstance make_instance(int n, int k, double gamma, std::vector<StochasticMatrix> transitions,
                          std::optional<Vec> certified_reward,
                          std::optional<double> certified_beta) {
    if (k < 2) throw DimensionMismatchError("make_instance: k must be >= 2");
    if (!(gamma > 0.0 && gamma < 1.0)) throw Error("make_instance: gamma must lie in (0,1)");
    if (static_cast<int>(transitions.size()) != k)
        throw DimensionMismatchError("make_instance: need one transition matrix per action");
    for (const auto& t : transitions)
        if (t.n != n) throw DimensionMismatchError("make_instance: transition size mismatch");
    IrlInstance inst{n, k, gamma, std::move(transitions), std::move(certified_reward), certified_beta};
    if (inst.certified_reward) {
        if (static_cast<int>(inst.certified_reward->size()) != n)
            throw DimensionMismatchError("make_instance: certified reward size mismatch");
        if (std::fabs(norm1(*inst.certified_reward) - 1.0) > 1e-9)
            throw Error("make_instance: certified reward must have unit 1-norm");
        // The margin-vs-beta certification itself is a reported property
        // (verify_ensemble), not a construction precondition.
    }
    return inst;
}

IrlInstance reindex_actions(const IrlInstance& inst, int new_optimal_action) {
    if (new_optimal_action < 0 || new_optimal_action >= inst.k)
        throw DimensionMismatchError("reindex_actions: action out of range");
    IrlInstance out = inst;
    std::swap(out.transitions[0], out.transitions[new_optimal_action]);
    out.certified_reward.reset();
    out.certified_beta.reset();
    return out;
}

Vec policy_value(const StochasticMatrix& p_pi, const Vec& reward, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw Error("policy_value: gamma must lie in (0,1)");
    if (static_cast<int>(reward.size()) != p_pi.n)
        throw DimensionMismatchError("policy_value: reward size mismatch");
    const int n = p_pi.n;
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - gamma * p_pi.p(i, j);
    return lu_solve(a, reward);
}

Mat bellman_margins(const IrlInstance& inst, const Vec& reward) {
    if (static_cast<int>(reward.size()) != inst.n)
        throw DimensionMismatchError("bellman_margins: reward size mismatch");
    // One shared solve of (I - gamma P_{a_1}) z = R, then row differences.
    const Vec z = policy_value(inst.transitions[0], reward, inst.gamma);
    Mat margins(inst.n, inst.k - 1);
    for (int a = 1; a < inst.k; ++a) {
        const Mat& p1 = inst.transitions[0].p;
        const Mat& pa = inst.transitions[a].p;
        for (int i = 0; i < inst.n; ++i) {
            double s = 0.0;
            for (int j = 0; j < inst.n; ++j) s += (p1(i, j) - pa(i, j)) * z[j];
            margins(i, a - 1) = s;
        }
    }
    return margins;
}

double separability_margin(const IrlInstance& inst, const Vec& reward) {
    const Vec r = normalize_l1(reward);
    const Mat m = bellman_margins(inst, r);
    double worst = kInf;
    for (double v : m.data()) worst = std::min(worst, v);
    return worst;
}

BetaResult measure_beta(const IrlInstance& inst) {
    if (inst.k < 2) throw DimensionMismatchError("measure_beta: k must be >= 2");
    const int n = inst.n;
    // Margin rows do not depend on R: margin(i,a) = w_{i,a}^T R with
    // w_{i,a} = (I - gamma P_{a_1})^{-T} (P_{a_1}(i) - P_a(i))^T.
    Mat a1t(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a1t(i, j) = (i == j ? 1.0 : 0.0) - inst.gamma * inst.transitions[0].p(j, i);
    std::vector<Vec> w;
    for (int a = 1; a < inst.k; ++a)
        for (int i = 0; i < n; ++i) {
            Vec d(n);
            for (int j = 0; j < n; ++j) d[j] = inst.transitions[0].p(i, j) - inst.transitions[a].p(i, j);
            w.push_back(lu_solve(a1t, d));
        }

    // Variables: [R+ (n), R- (n), beta]. Maximize beta.
    LpProblem lp;
    lp.objective.assign(2 * n + 1, 0.0);
    lp.objective[2 * n] = -1.0;
    lp.lower.assign(2 * n + 1, 0.0);
    lp.upper.assign(2 * n + 1, kInf);
    lp.lower[2 * n] = -kInf;
    for (const Vec& wi : w) {
        Vec c(2 * n + 1, 0.0);
        for (int j = 0; j < n; ++j) {
            c[j] = wi[j];
            c[n + j] = -wi[j];
        }
        c[2 * n] = -1.0;
        lp.add(std::move(c), Relation::GreaterEq, 0.0);
    }
    {
        Vec c(2 * n + 1, 0.0);
        for (int j = 0; j < 2 * n; ++j) c[j] = 1.0;
        lp.add(std::move(c), Relation::LessEq, 1.0);
    }
    const LpResult r = solve_lp(lp);
    if (r.status != LpStatus::Optimal)
        throw LpFailureError(std::string("measure_beta: LP ") + to_string(r.status));
    BetaResult out;
    out.beta = r.x[2 * n];
    out.reward.assign(n, 0.0);
    for (int j = 0; j < n; ++j) out.reward[j] = r.x[j] - r.x[n + j];
    const double s = norm1(out.reward);
    if (s > 1e-12) out.reward = scaled(out.reward, 1.0 / s);
    return out;
}

namespace {

Vec policy_value_for(const IrlInstance& inst, const Policy& pi, const Vec& reward) {
    const int n = inst.n;
    Mat a(n, n);
    for (int i = 0; i < n; ++i) {
        const Mat& p = inst.transitions[pi.action_of_state[i]].p;
        for (int j = 0; j < n; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - inst.gamma * p(i, j);
    }
    return lu_solve(a, reward);
}

std::vector<Policy> enumerate_optimal(const IrlInstance& inst, const Vec& reward, long long total) {
    const int n = inst.n;
    std::vector<Policy> all;
    all.reserve(static_cast<size_t>(total));
    Policy pi{std::vector<int>(n, 0)};
    std::vector<Vec> values;
    values.reserve(static_cast<size_t>(total));
    Vec vmax(n, -kInf);
    for (;;) {
        Vec v = policy_value_for(inst, pi, reward);
        for (int i = 0; i < n; ++i) vmax[i] = std::max(vmax[i], v[i]);
        all.push_back(pi);
        values.push_back(std::move(v));
        int pos = 0;
        while (pos < n && ++pi.action_of_state[pos] == inst.k) pi.action_of_state[pos++] = 0;
        if (pos == n) break;
    }
    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(vmax[i]));
    const double tol = 1e-9 * scale;
    std::vector<Policy> opt;
    for (size_t t = 0; t < all.size(); ++t) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = values[t][i] >= vmax[i] - tol;
        if (ok) opt.push_back(all[t]);
    }
    return opt;
}

std::vector<Policy> policy_iteration_optimal(const IrlInstance& inst, const Vec& reward) {
    const int n = inst.n;
    Policy pi{std::vector<int>(n, 0)};
    Vec v;
    bool converged = false;
    for (int sweep = 0; sweep < 10000; ++sweep) {
        v = policy_value_for(inst, pi, reward);
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best_a = pi.action_of_state[i];
            double best_q = reward[i] + inst.gamma * dot(inst.transitions[best_a].row(i), v);
            for (int a = 0; a < inst.k; ++a) {
                const double q = reward[i] + inst.gamma * dot(inst.transitions[a].row(i), v);
                if (q > best_q + 1e-12) { best_q = q; best_a = a; }
            }
            if (best_a != pi.action_of_state[i]) {
                pi.action_of_state[i] = best_a;
                changed = true;
            }
        }
        if (!changed) { converged = true; break; }
    }
    if (!converged) throw TooLargeError("brute_force_optimal_policies: policy iteration did not converge");
    v = policy_value_for(inst, pi, reward);
    // Greedy tie sets under the optimal value function.
    std::vector<std::vector<int>> argmax(n);
    double scale = 1.0;
    for (double x : v) scale = std::max(scale, std::fabs(x));
    long long total = 1;
    for (int i = 0; i < n; ++i) {
        double best = -kInf;
        Vec q(inst.k);
        for (int a = 0; a < inst.k; ++a) {
            q[a] = reward[i] + inst.gamma * dot(inst.transitions[a].row(i), v);
            best = std::max(best, q[a]);
        }
        for (int a = 0; a < inst.k; ++a)
            if (q[a] >= best - 1e-9 * scale) argmax[i].push_back(a);
        total *= static_cast<long long>(argmax[i].size());
        if (total > 1000000) throw TooLargeError("brute_force_optimal_policies: optimal set too large");
    }
    std::vector<Policy> opt;
    Policy cur{std::vector<int>(n, 0)};
    std::vector<int> idx(n, 0);
    for (;;) {
        for (int i = 0; i < n; ++i) cur.action_of_state[i] = argmax[i][idx[i]];
        opt.push_back(cur);
        int pos = 0;
        while (pos < n && ++idx[pos] == static_cast<int>(argmax[pos].size())) idx[pos++] = 0;
        if (pos == n) break;
    }
    return opt;
}

}  // namespace

std::vector<Policy> brute_force_optimal_policies(const IrlInstance& inst, const Vec& reward) {
    if (static_cast<int>(reward.size()) != inst.n)
        throw DimensionMismatchError("brute_force_optimal_policies: reward size mismatch");
    double total = 1.0;
    for (int i = 0; i < inst.n; ++i) total *= inst.k;
    if (total <= 1e6) return enumerate_optimal(inst, reward, static_cast<long long>(total));
    return policy_iteration_optimal(inst, reward);
}

}  // namespace irl_lab
