#include "irl_lab/trajectory.hpp"

#include <cmath>

#include "irl_lab/errors.hpp"

namespace irl_lab {

Trajectory sample_trajectory(const IrlInstance& inst, int m, Rng& rng) {
    if (m < 1) throw Error("sample_trajectory: m must be >= 1");
    Trajectory t;
    t.initial_state = rng.next_below(inst.n);
    int s = t.initial_state;
    t.steps.reserve(m - 1);
    for (int step = 0; step + 1 < m; ++step) {
        const int a = rng.next_below(inst.k);
        const int s2 = rng.sample_categorical(inst.transitions[a].row(s));
        t.steps.push_back({s, a, s2});
        s = s2;
    }
    return t;
}

Trajectory sample_trajectory(const IrlInstance& inst, int m, std::uint64_t seed) {
    Rng rng(seed);
    return sample_trajectory(inst, m, rng);
}

std::vector<StochasticMatrix> estimate_from_counts(const TransitionCounts& c, double smoothing) {
    if (smoothing < 0.0) throw Error("estimate_from_counts: smoothing must be >= 0");
    std::vector<StochasticMatrix> out;
    out.reserve(c.k);
    for (int a = 0; a < c.k; ++a) {
        Mat m(c.n, c.n);
        for (int i = 0; i < c.n; ++i) {
            const long long v = c.visit(a, i);
            if (v == 0) {
                for (int j = 0; j < c.n; ++j) m(i, j) = 1.0 / c.n;
                continue;
            }
            const double denom = static_cast<double>(v) + c.n * smoothing;
            for (int j = 0; j < c.n; ++j)
                m(i, j) = (static_cast<double>(c.count(a, i, j)) + smoothing) / denom;
        }
        out.push_back(validate_stochastic(m));
    }
    return out;
}

std::vector<StochasticMatrix> estimate_transitions(const std::vector<Trajectory>& trajs, int n,
                                                   int k, double smoothing) {
    TransitionCounts c(n, k);
    for (const auto& t : trajs) c.add(t);
    return estimate_from_counts(c, smoothing);
}

double discrete_kl(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DimensionMismatchError("discrete_kl: size mismatch");
    double s = 0.0;
    for (size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0.0) continue;
        if (q[j] <= 0.0)
            throw AbsoluteContinuityError("discrete_kl: p > 0 where q = 0");
        s += p[j] * std::log(p[j] / q[j]);
    }
    return s;
}

Vec kl_rows(const StochasticMatrix& p, const StochasticMatrix& q) {
    if (p.n != q.n) throw DimensionMismatchError("kl_rows: size mismatch");
    Vec v(p.n);
    for (int i = 0; i < p.n; ++i) v[i] = discrete_kl(p.row(i), q.row(i));
    return v;
}

double kl_quadratic_bound(std::span<const double> p_row, std::span<const double> q_row) {
    if (p_row.size() != q_row.size())
        throw DimensionMismatchError("kl_quadratic_bound: size mismatch");
    double s = 0.0;
    for (size_t j = 0; j < p_row.size(); ++j) {
        if (p_row[j] <= 0.0) throw ZeroEntryError("kl_quadratic_bound: p row must be positive");
        const double d = q_row[j] - p_row[j];
        s += d * d / p_row[j];
    }
    return 0.5 * s;
}

double exact_trajectory_kl(const StochasticMatrix& p, const StochasticMatrix& q,
                           const Vec& init_p, const Vec& init_q, int m) {
    if (m < 1) throw Error("exact_trajectory_kl: m must be >= 1");
    if (p.n != q.n || static_cast<int>(init_p.size()) != p.n ||
        static_cast<int>(init_q.size()) != p.n)
        throw DimensionMismatchError("exact_trajectory_kl: size mismatch");
    double acc = discrete_kl(init_p, init_q);
    if (m == 1) return acc;
    const Vec v = kl_rows(p, q);
    Vec dist = init_p;
    for (int t = 0; t + 1 < m; ++t) {
        acc += dot(dist, v);
        if (t + 2 < m) dist = vec_mat(dist, p.p);
    }
    return acc;
}

double exact_trajectory_kl(const StochasticMatrix& p, const StochasticMatrix& q, const Vec& init,
                           int m) {
    return exact_trajectory_kl(p, q, init, init, m);
}

double brute_force_trajectory_kl(const StochasticMatrix& p, const StochasticMatrix& q,
                                 const Vec& init, int m) {
    if (m < 1) throw Error("brute_force_trajectory_kl: m must be >= 1");
    double total = 1.0;
    for (int t = 0; t < m; ++t) {
        total *= p.n;
        if (total > 1e7) throw TooLargeError("brute_force_trajectory_kl: n^m exceeds 1e7");
    }
    // Depth-first walk over all state sequences, carrying both sequence
    // probabilities.
    double acc = 0.0;
    std::vector<int> seq(m, 0);
    struct Frame { double pp, qq; };
    std::vector<Frame> stack(m + 1);
    int depth = 0;
    seq[0] = -1;
    while (depth >= 0) {
        if (++seq[depth] >= p.n) { --depth; continue; }
        const int s = seq[depth];
        double pp, qq;
        if (depth == 0) {
            pp = init[s];
            qq = init[s];
        } else {
            const int prev = seq[depth - 1];
            pp = stack[depth - 1].pp * p.p(prev, s);
            qq = stack[depth - 1].qq * q.p(prev, s);
        }
        if (pp > 0.0 && qq <= 0.0)
            throw AbsoluteContinuityError("brute_force_trajectory_kl: p > 0 where q = 0");
        if (pp == 0.0) continue;  // no p-mass below this prefix
        stack[depth] = {pp, qq};
        if (depth + 1 == m) {
            if (pp > 0.0) acc += pp * std::log(pp / qq);
            continue;
        }
        ++depth;
        seq[depth] = -1;
    }
    return acc;
}

StochasticMatrix extended_chain(const IrlInstance& inst) {
    const int n = inst.n, k = inst.k;
    Mat m(n * k, n * k);
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < k; ++a)
            for (int s2 = 0; s2 < n; ++s2) {
                const double v = inst.transitions[a].p(s, s2) / k;
                for (int a2 = 0; a2 < k; ++a2) m(s * k + a, s2 * k + a2) = v;
            }
    return validate_stochastic(m);
}

}  // namespace irl_lab
