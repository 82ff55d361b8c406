#pragma once

#include "goalrec/constraints/linear_constraint.h"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace goalrec::lp {

using constraints::LinearConstraint;

// minimize objective . y  subject to  constraints (all >=),  y >= 0.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<double> objective;
    std::vector<LinearConstraint> constraints;

    // Throws std::invalid_argument on size mismatches, bad variable indices
    // or non-finite coefficients.
    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus status);

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    // Meaningful only when status == Optimal.
    double value = 0.0;
    std::vector<double> counts;
    std::size_t iterations = 0;
};

inline constexpr double kFeasibilityTolerance = 1e-7;
inline constexpr double kPhaseOneInfeasible = 1e-6;

// Built-in dense two-phase primal simplex. Throws SolverError when the
// iteration limit is hit.
LpOutcome solve_lp(const LinearProgram &lp);

// CPLEX LP text format. `names` (optional) annotates variables in comments.
std::string to_lp_format(const LinearProgram &lp, const std::vector<std::string> &names = {});

}  // namespace goalrec::lp
