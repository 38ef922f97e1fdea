#include "irl_lab/solvers.hpp"

#include <cmath>

#include "irl_lab/errors.hpp"

namespace irl_lab {

namespace {

// Margin coefficient rows w_{i,a} such that margin(i,a) = w_{i,a} . R under
// the instance's transitions.
std::vector<Vec> margin_rows(const IrlInstance& inst) {
    const int n = inst.n;
    Mat a1t(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a1t(i, j) = (i == j ? 1.0 : 0.0) - inst.gamma * inst.transitions[0].p(j, i);
    std::vector<Vec> w;
    w.reserve(static_cast<size_t>(n) * (inst.k - 1));
    for (int a = 1; a < inst.k; ++a)
        for (int i = 0; i < n; ++i) {
            Vec d(n);
            for (int j = 0; j < n; ++j)
                d[j] = inst.transitions[0].p(i, j) - inst.transitions[a].p(i, j);
            w.push_back(lu_solve(a1t, d));
        }
    return w;
}

}  // namespace

IrlSolution irl_ng_russell(const IrlInstance& est, double lambda, double r_max) {
    const int n = est.n;
    const std::vector<Vec> w = margin_rows(est);

    // Variables: [R (n), t (n), u (n)]; minimize lambda sum u - sum t.
    LpProblem lp;
    lp.objective.assign(3 * n, 0.0);
    for (int i = 0; i < n; ++i) {
        lp.objective[n + i] = -1.0;
        lp.objective[2 * n + i] = lambda;
    }
    lp.lower.assign(3 * n, 0.0);
    lp.upper.assign(3 * n, kInf);
    for (int i = 0; i < n; ++i) {
        lp.lower[i] = -r_max;
        lp.upper[i] = r_max;
        lp.lower[n + i] = -kInf;
    }
    for (int a = 1; a < est.k; ++a)
        for (int i = 0; i < n; ++i) {
            const Vec& wi = w[static_cast<size_t>(a - 1) * n + i];
            // margin(i,a) >= 0
            Vec c0(3 * n, 0.0);
            for (int j = 0; j < n; ++j) c0[j] = wi[j];
            lp.add(c0, Relation::GreaterEq, 0.0);
            // margin(i,a) - t_i >= 0
            c0[n + i] = -1.0;
            lp.add(std::move(c0), Relation::GreaterEq, 0.0);
        }
    for (int i = 0; i < n; ++i) {
        Vec c(3 * n, 0.0);
        c[i] = -1.0;
        c[2 * n + i] = 1.0;
        lp.add(c, Relation::GreaterEq, 0.0);  // u_i >= R_i
        c[i] = 1.0;
        lp.add(std::move(c), Relation::GreaterEq, 0.0);  // u_i >= -R_i
    }

    const LpResult r = solve_lp(lp);
    IrlSolution out;
    out.status = r.status;
    if (r.status == LpStatus::Optimal) {
        out.reward.values.assign(r.x.begin(), r.x.begin() + n);
        out.objective_value = -r.objective;  // maximized value
    }
    return out;
}

IrlSolution irl_l1_svm(const IrlInstance& est) {
    const int n = est.n;
    const std::vector<Vec> w = margin_rows(est);

    // Variables: [R (n), u (n)]; minimize sum u with margins >= 1.
    LpProblem lp;
    lp.objective.assign(2 * n, 0.0);
    for (int i = 0; i < n; ++i) lp.objective[n + i] = 1.0;
    lp.lower.assign(2 * n, 0.0);
    lp.upper.assign(2 * n, kInf);
    for (int i = 0; i < n; ++i) lp.lower[i] = -kInf;
    for (const Vec& wi : w) {
        Vec c(2 * n, 0.0);
        for (int j = 0; j < n; ++j) c[j] = wi[j];
        lp.add(std::move(c), Relation::GreaterEq, 1.0);
    }
    for (int i = 0; i < n; ++i) {
        Vec c(2 * n, 0.0);
        c[i] = -1.0;
        c[n + i] = 1.0;
        lp.add(c, Relation::GreaterEq, 0.0);
        c[i] = 1.0;
        lp.add(std::move(c), Relation::GreaterEq, 0.0);
    }

    const LpResult r = solve_lp(lp);
    IrlSolution out;
    out.status = r.status;
    if (r.status == LpStatus::Optimal) {
        Vec reward(r.x.begin(), r.x.begin() + n);
        out.objective_value = r.objective;
        out.reward.values = normalize_l1(reward);
    }
    return out;
}

bool success_check(const IrlInstance& truth, const Vec& recovered) {
    if (norm1(recovered) == 0.0) return false;
    const Mat m = bellman_margins(truth, recovered);
    for (double v : m.data())
        if (!(v > kStrictMarginTol)) return false;
    return true;
}

std::map<std::string, SolverFn>& solver_registry() {
    static std::map<std::string, SolverFn> reg = {
        {"ng_russell", [](const IrlInstance& est) { return irl_ng_russell(est); }},
        {"l1_svm", [](const IrlInstance& est) { return irl_l1_svm(est); }},
    };
    return reg;
}

void register_solver(const std::string& name, SolverFn fn) {
    solver_registry()[name] = std::move(fn);
}

SolverFn find_solver(const std::string& name) {
    const auto& reg = solver_registry();
    const auto it = reg.find(name);
    if (it == reg.end()) throw Error("unknown solver: " + name);
    return it->second;
}

}  // namespace irl_lab
