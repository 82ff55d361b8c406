#pragma once

#include "goalrec/constraints/linear_constraint.h"
#include "goalrec/model/task.h"

#include <string>
#include <string_view>

namespace goalrec::constraints {

// Disjunctive action landmarks from LM-cut rounds over the STRIPS task:
// one row sum_{a in L} Y_a >= 1 per cut L. Sets `infeasible` when the goal
// is unreachable in the delete relaxation.
ConstraintSet landmark_constraints(const model::PlanningTask &task, const model::FactSet &goal);

// Lower-bound net change per fact p:
//   sum_{a: p in add, p not in pre} Y_a - sum_{a: p in del, p in pre} Y_a
//     >= [p in goal] - [p in init]
ConstraintSet net_change_constraints(const model::PlanningTask &task, const model::FactSet &goal);

// Per goal fact g: sum_{a in R(g)} cost(a) Y_a >= h_max(init, {g}), where
// R(g) is the relaxed backchaining closure of g.
ConstraintSet posthoc_constraints(const model::PlanningTask &task, const model::FactSet &goal);

struct FamilySelection {
    bool landmarks = true;
    bool net_change = true;
    bool post_hoc = true;

    bool any() const { return landmarks || net_change || post_hoc; }
    bool operator==(const FamilySelection &) const = default;

    static FamilySelection all() { return {}; }
    // Comma-separated subset of "lm", "nc", "ph"; throws std::invalid_argument.
    static FamilySelection parse(std::string_view text);
    std::string to_string() const;
};

ConstraintSet base_constraints(const model::PlanningTask &task, const model::FactSet &goal,
                               const FamilySelection &families = FamilySelection::all());

// One line per constraint: "sum <coef>*<action-name> ... >= <rhs> [source]".
std::string dump_constraints(const ConstraintSet &set, const model::PlanningTask &task);

}  // namespace goalrec::constraints
