#pragma once

#include <functional>
#include <map>
#include <string>

#include "irl_lab/lp.hpp"
#include "irl_lab/mdp.hpp"

namespace irl_lab {

struct IrlSolution {
    RewardVector reward;  // meaningful iff status == Optimal
    LpStatus status = LpStatus::NumericalFailure;
    double objective_value = 0.0;

    bool ok() const { return status == LpStatus::Optimal; }
};

// Classic LP recovery: maximize sum_i min_{a != a_1} margin(i, a) - lambda ||R||_1
// subject to all margins >= 0 and |R_i| <= r_max, margins taken under the
// estimated transitions. The min over actions is linearized with auxiliary
// variables. lambda defaults to 0: any lambda >= n * max-margin makes R = 0
// the optimum (the objective is linear in the reward scale), and instances
// in this problem family have max-margins of ~1e-3, so a unit penalty would
// disable the method outright.
IrlSolution irl_ng_russell(const IrlInstance& est, double lambda = 0.0, double r_max = 1.0);

// Margin-1 L1 recovery: minimize ||R||_1 subject to margin(i, a) >= 1 for
// every state and non-optimal action. Infeasibility (the estimated margins
// cannot all reach 1) is reported and counts as a failed trial. The reward
// is normalized to unit 1-norm on output.
IrlSolution irl_l1_svm(const IrlInstance& est);

// True iff pi == a_1 is the unique Bellman-optimal policy of (truth,
// recovered): every margin under the true transitions exceeds 1e-12.
bool success_check(const IrlInstance& truth, const Vec& recovered);

// Named solver plug-ins for the experiment harness. Third-party methods can
// be registered here without touching the harness.
using SolverFn = std::function<IrlSolution(const IrlInstance&)>;

std::map<std::string, SolverFn>& solver_registry();
void register_solver(const std::string& name, SolverFn fn);
SolverFn find_solver(const std::string& name);

}  // namespace irl_lab
