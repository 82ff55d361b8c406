#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace goalrec::constraints {

enum class ConstraintSource { Landmark, NetChange, PostHoc, Observation };

std::string_view to_string(ConstraintSource source);

// sum_i coef_i * Y_{var_i} >= rhs. Variables are action indices.
struct LinearConstraint {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
    ConstraintSource source = ConstraintSource::Landmark;

    double lhs(const std::vector<double> &values) const {
        double sum = 0.0;
        for (const auto &[var, coef] : terms)
            sum += coef * values.at(static_cast<std::size_t>(var));
        return sum;
    }
};

// Operator-counting constraints for one (task, goal) pair. `infeasible` is
// set when a generator proves that no plan exists (unreachable goal, or a
// net-change row with no terms and positive right-hand side); the heuristic
// value is then infinite without solving an LP.
struct ConstraintSet {
    std::size_t num_actions = 0;
    std::vector<LinearConstraint> constraints;
    bool infeasible = false;
    std::string infeasible_reason;

    void append(const ConstraintSet &other);
    std::size_t count(ConstraintSource source) const;
    // Every constraint holds for the given count vector (within `tolerance`).
    bool satisfied_by(const std::vector<double> &counts, double tolerance = 1e-9) const;
};

}  // namespace goalrec::constraints
