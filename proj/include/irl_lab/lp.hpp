#pragma once

#include <string>
#include <vector>

#include "irl_lab/linalg.hpp"

namespace irl_lab {

enum class Relation { LessEq, Equal, GreaterEq };

struct LpConstraint {
    Vec coeffs;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
};

// min c^T x  subject to  constraints and per-variable bounds (+-inf allowed).
// Bounds default to free variables when left empty.
struct LpProblem {
    Vec objective;
    std::vector<LpConstraint> constraints;
    Vec lower;
    Vec upper;

    int num_vars() const { return static_cast<int>(objective.size()); }
    void add(Vec coeffs, Relation rel, double rhs) {
        constraints.push_back({std::move(coeffs), rel, rhs});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

struct LpResult {
    LpStatus status = LpStatus::NumericalFailure;
    Vec x;
    double objective = 0.0;
};

const char* to_string(LpStatus s);

// Dense two-phase simplex with Bland's rule. Problem sizes here are tiny
// (tens of variables and constraints), so robustness wins over speed.
LpResult solve_lp(const LpProblem& p);

}  // namespace irl_lab
