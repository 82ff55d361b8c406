#include "goalrec/constraints/linear_constraint.h"

#include <algorithm>

namespace goalrec::constraints {

std::string_view to_string(ConstraintSource source) {
    switch (source) {
    case ConstraintSource::Landmark:
        return "landmark";
    case ConstraintSource::NetChange:
        return "net-change";
    case ConstraintSource::PostHoc:
        return "post-hoc";
    case ConstraintSource::Observation:
        return "observation";
    }
    return "unknown";
}

void ConstraintSet::append(const ConstraintSet &other) {
    num_actions = std::max(num_actions, other.num_actions);
    constraints.insert(constraints.end(), other.constraints.begin(), other.constraints.end());
    if (other.infeasible && !infeasible) {
        infeasible = true;
        infeasible_reason = other.infeasible_reason;
    }
}

std::size_t ConstraintSet::count(ConstraintSource source) const {
    return static_cast<std::size_t>(
        std::count_if(constraints.begin(), constraints.end(),
                      [source](const LinearConstraint &c) { return c.source == source; }));
}

bool ConstraintSet::satisfied_by(const std::vector<double> &counts, double tolerance) const {
    if (infeasible)
        return false;
    return std::all_of(constraints.begin(), constraints.end(), [&](const LinearConstraint &c) {
        return c.lhs(counts) >= c.rhs - tolerance;
    });
}

}  // namespace goalrec::constraints
