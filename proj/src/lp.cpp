#include "irl_lab/lp.hpp"

#include <algorithm>
#include <cmath>

#include "irl_lab/errors.hpp"

namespace irl_lab {

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kFeasEps = 1e-8;
constexpr int kMaxIters = 50000;
constexpr int kRefactorEvery = 256;

// Mapping of an original variable onto nonnegative standard-form variables:
// x = sign_a * z[a] + sign_b * z[b] + shift.
struct VarMap {
    int a = -1, b = -1;
    double sign_a = 1.0, sign_b = 0.0;
    double shift = 0.0;
};

struct Tableau {
    int m = 0, n = 0;
    std::vector<Vec> a0;  // pristine equality rows
    Vec b0;               // pristine rhs (>= 0)
    std::vector<Vec> row; // current B^{-1} A
    Vec rhs;              // current B^{-1} b
    std::vector<int> basis;

    void pivot(int r, int c) {
        const double inv = 1.0 / row[r][c];
        for (int j = 0; j < n; ++j) row[r][j] *= inv;
        rhs[r] *= inv;
        row[r][c] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = row[i][c];
            if (std::fabs(f) < 1e-14) { row[i][c] = 0.0; continue; }
            for (int j = 0; j < n; ++j) row[i][j] -= f * row[r][j];
            row[i][c] = 0.0;
            rhs[i] -= f * rhs[r];
            if (rhs[i] < 0.0 && rhs[i] > -1e-11) rhs[i] = 0.0;
        }
        basis[r] = c;
    }

    // Rebuilds row/rhs as B^{-1}[A | b] from the pristine data, eliminating
    // accumulated pivot drift. Returns false if the basis matrix is singular.
    bool refactor() {
        Mat b(m, m);
        for (int i = 0; i < m; ++i)
            for (int l = 0; l < m; ++l) b(i, l) = a0[i][basis[l]];
        Mat rhs_all(m, n + 1);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) rhs_all(i, j) = a0[i][j];
            rhs_all(i, n) = b0[i];
        }
        Mat solved;
        try {
            solved = lu_solve_multi(b, rhs_all);
        } catch (const SingularSystemError&) {
            return false;
        }
        for (int l = 0; l < m; ++l) {
            for (int j = 0; j < n; ++j) row[l][j] = solved(l, j);
            double v = solved(l, n);
            if (v < 0.0 && v > -kFeasEps) v = 0.0;
            rhs[l] = v;
        }
        // basic columns are identity by definition
        for (int l = 0; l < m; ++l)
            for (int i = 0; i < m; ++i) row[i][basis[l]] = (i == l ? 1.0 : 0.0);
        return true;
    }
};

enum class PhaseOutcome { Optimal, Unbounded, IterationLimit, SingularBasis };

struct PhaseResult {
    PhaseOutcome outcome = PhaseOutcome::Optimal;
    long long pivots = 0;
};

// Bland's rule with periodic refactorization: entering variable is the
// lowest-index allowed column with negative reduced cost; the leaving row
// has the minimal ratio, ties broken by smallest basis index. Columns with
// only marginally negative reduced cost and no leaving row are treated as
// converged noise rather than unboundedness.
PhaseResult run_simplex(Tableau& t, Vec& cost, const std::vector<bool>& allowed) {
    std::vector<bool> skip(t.n, false);
    PhaseResult res;
    int since_refactor = 0;
    for (int iter = 0; iter < kMaxIters; ++iter) {
        int enter = -1;
        for (int j = 0; j < t.n; ++j) {
            if (!allowed[j] || skip[j]) continue;
            if (cost[j] < -kPivotEps) { enter = j; break; }
        }
        if (enter < 0) return res;
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < t.m; ++i) {
            const double a = t.row[i][enter];
            if (a <= kPivotEps) continue;
            const double ratio = std::max(t.rhs[i], 0.0) / a;
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[i] < t.basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) {
            if (cost[enter] > -1e-7) { skip[enter] = true; continue; }
            res.outcome = PhaseOutcome::Unbounded;
            return res;
        }
        t.pivot(leave, enter);
        ++res.pivots;
        const double f = cost[enter];
        if (f != 0.0) {
            for (int j = 0; j < t.n; ++j) cost[j] -= f * t.row[leave][j];
            cost[enter] = 0.0;
        }
        std::fill(skip.begin(), skip.end(), false);
        if (++since_refactor >= kRefactorEvery) {
            since_refactor = 0;
            if (!t.refactor()) { res.outcome = PhaseOutcome::SingularBasis; return res; }
        }
    }
    res.outcome = PhaseOutcome::IterationLimit;
    return res;
}

// Refactorizes, prices cost0 out against the current basis, runs the phase,
// and only trusts a verdict that is reproduced from a freshly rebuilt
// tableau with freshly priced costs.
PhaseOutcome run_phase(Tableau& t, const Vec& cost0, const std::vector<bool>& allowed) {
    PhaseOutcome last = PhaseOutcome::IterationLimit;
    for (int round = 0; round < 4; ++round) {
        if (!t.refactor()) return PhaseOutcome::SingularBasis;
        Vec cost = cost0;
        for (int i = 0; i < t.m; ++i) {
            const double f = cost[t.basis[i]];
            if (f == 0.0) continue;
            for (int j = 0; j < t.n; ++j) cost[j] -= f * t.row[i][j];
            cost[t.basis[i]] = 0.0;
        }
        const PhaseResult r = run_simplex(t, cost, allowed);
        if (r.outcome == PhaseOutcome::Optimal && r.pivots == 0) return PhaseOutcome::Optimal;
        if (r.outcome == last && r.outcome != PhaseOutcome::Optimal) return r.outcome;
        last = r.outcome;
    }
    return last;
}

LpResult solve_lp_impl(const LpProblem& p, double perturb) {
    const int nv = p.num_vars();
    Vec lower = p.lower, upper = p.upper;
    if (lower.empty()) lower.assign(nv, -kInf);
    if (upper.empty()) upper.assign(nv, kInf);
    if (static_cast<int>(lower.size()) != nv || static_cast<int>(upper.size()) != nv)
        throw DimensionMismatchError("solve_lp: bounds size mismatch");
    for (const auto& c : p.constraints)
        if (static_cast<int>(c.coeffs.size()) != nv)
            throw DimensionMismatchError("solve_lp: constraint width mismatch");

    LpResult res;
    for (int j = 0; j < nv; ++j)
        if (lower[j] > upper[j]) { res.status = LpStatus::Infeasible; return res; }

    // Substitute variables so every standard-form variable is >= 0.
    std::vector<VarMap> vmap(nv);
    int nz = 0;
    std::vector<LpConstraint> extra;  // upper-bound rows created by substitution
    for (int j = 0; j < nv; ++j) {
        const bool lf = std::isfinite(lower[j]), uf = std::isfinite(upper[j]);
        if (lf) {
            vmap[j] = {nz++, -1, 1.0, 0.0, lower[j]};
            if (uf && upper[j] > lower[j]) {
                LpConstraint c;
                c.coeffs.assign(nv, 0.0);
                c.coeffs[j] = 1.0;
                c.rel = Relation::LessEq;
                c.rhs = upper[j];
                extra.push_back(std::move(c));
            } else if (uf && upper[j] == lower[j]) {
                vmap[j] = {nz - 1, -1, 0.0, 0.0, lower[j]};  // fixed variable
            }
        } else if (uf) {
            vmap[j] = {nz++, -1, -1.0, 0.0, upper[j]};
        } else {
            vmap[j] = {nz, nz + 1, 1.0, -1.0, 0.0};
            nz += 2;
        }
    }

    std::vector<LpConstraint> rows = p.constraints;
    rows.insert(rows.end(), extra.begin(), extra.end());
    const int m = static_cast<int>(rows.size());

    // Row equilibration keeps the phase tolerances meaningful when
    // constraint scales differ by orders of magnitude; the graded rhs
    // perturbation is the anti-degeneracy retry offset (see solve_lp).
    for (size_t ri = 0; ri < rows.size(); ++ri) {
        auto& r = rows[ri];
        double scale = 0.0;
        for (double v : r.coeffs) scale = std::max(scale, std::fabs(v));
        if (scale > 0.0) {
            for (double& v : r.coeffs) v /= scale;
            r.rhs /= scale;
        }
        r.rhs += perturb * static_cast<double>(ri + 1);
    }

    int n_slack = 0;
    for (const auto& r : rows)
        if (r.rel != Relation::Equal) ++n_slack;

    Tableau t;
    t.m = m;
    t.n = nz + n_slack + m;  // standard vars, slacks, artificials
    t.a0.assign(m, Vec(t.n, 0.0));
    t.b0.assign(m, 0.0);
    t.basis.assign(m, -1);

    int slack_at = nz;
    const int first_art = nz + n_slack;
    for (int i = 0; i < m; ++i) {
        double b = rows[i].rhs;
        for (int j = 0; j < nv; ++j) {
            const double a = rows[i].coeffs[j];
            if (a == 0.0) continue;
            const VarMap& vm = vmap[j];
            t.a0[i][vm.a] += a * vm.sign_a;
            if (vm.b >= 0) t.a0[i][vm.b] += a * vm.sign_b;
            b -= a * vm.shift;
        }
        double slack_sign = 0.0;
        if (rows[i].rel == Relation::LessEq) slack_sign = 1.0;
        if (rows[i].rel == Relation::GreaterEq) slack_sign = -1.0;
        int slack_col = -1;
        if (slack_sign != 0.0) {
            slack_col = slack_at++;
            t.a0[i][slack_col] = slack_sign;
        }
        if (b < 0.0) {
            for (int j = 0; j < t.n; ++j) t.a0[i][j] = -t.a0[i][j];
            b = -b;
            slack_sign = -slack_sign;
        }
        t.b0[i] = b;
        t.a0[i][first_art + i] = 1.0;  // artificial column (may stay unused)
        if (slack_col >= 0 && slack_sign > 0.0) {
            t.basis[i] = slack_col;
        } else {
            t.basis[i] = first_art + i;
        }
    }
    t.row = t.a0;
    t.rhs = t.b0;

    std::vector<bool> allow_all(t.n, true);

    // Phase 1: minimize the sum of artificials.
    bool any_art = false;
    for (int i = 0; i < m; ++i) any_art |= t.basis[i] >= first_art;
    if (any_art) {
        Vec cost0(t.n, 0.0);
        for (int j = first_art; j < t.n; ++j) cost0[j] = 1.0;
        const PhaseOutcome out = run_phase(t, cost0, allow_all);
        if (out != PhaseOutcome::Optimal) { res.status = LpStatus::NumericalFailure; return res; }
        double art_sum = 0.0;
        for (int i = 0; i < m; ++i)
            if (t.basis[i] >= first_art) art_sum += t.rhs[i];
        if (art_sum > kFeasEps) { res.status = LpStatus::Infeasible; return res; }
        // Drive leftover zero-valued artificials out of the basis where
        // possible; rows with no eligible column are redundant and frozen.
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] < first_art) continue;
            for (int j = 0; j < first_art; ++j)
                if (std::fabs(t.row[i][j]) > kPivotEps) { t.pivot(i, j); break; }
        }
    }
    std::vector<bool> allowed(t.n, true);
    for (int j = first_art; j < t.n; ++j) allowed[j] = false;

    // Phase 2: original objective over standard-form variables.
    Vec cost0(t.n, 0.0);
    for (int j = 0; j < nv; ++j) {
        const double c = p.objective[j];
        if (c == 0.0) continue;
        const VarMap& vm = vmap[j];
        if (vm.sign_a != 0.0) cost0[vm.a] += c * vm.sign_a;
        if (vm.b >= 0) cost0[vm.b] += c * vm.sign_b;
    }
    const PhaseOutcome out = run_phase(t, cost0, allowed);
    if (out == PhaseOutcome::Unbounded) { res.status = LpStatus::Unbounded; return res; }
    if (out != PhaseOutcome::Optimal) { res.status = LpStatus::NumericalFailure; return res; }

    Vec z(t.n, 0.0);
    for (int i = 0; i < m; ++i) z[t.basis[i]] = t.rhs[i];
    res.x.assign(nv, 0.0);
    for (int j = 0; j < nv; ++j) {
        const VarMap& vm = vmap[j];
        double v = vm.shift + vm.sign_a * z[vm.a];
        if (vm.b >= 0) v += vm.sign_b * z[vm.b];
        res.x[j] = v;
    }
    res.objective = dot(p.objective, res.x);
    res.status = LpStatus::Optimal;
    return res;
}

}  // namespace

LpResult solve_lp(const LpProblem& p) {
    LpResult r = solve_lp_impl(p, 0.0);
    if (r.status != LpStatus::NumericalFailure) return r;
    // Fully degenerate bases can stall the float Bland rule; a graded rhs
    // perturbation breaks the ties at a cost far below the 1e-8 feasibility
    // tolerance.
    for (double perturb : {1e-11, 4e-10, 2e-8}) {
        r = solve_lp_impl(p, perturb);
        if (r.status != LpStatus::NumericalFailure) return r;
    }
    return r;
}

}  // namespace irl_lab
