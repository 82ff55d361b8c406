#pragma once

#include "goalrec/model/pddl.h"
#include "goalrec/model/task.h"

#include <cstddef>
#include <span>

namespace goalrec::model {

struct GroundingOptions {
    // Upper bound on type-consistent instantiations considered; exceeding it
    // raises GroundingError.
    std::size_t max_actions = 1'000'000;
    // Keep only actions reachable in the delete relaxation from init.
    bool prune_unreachable = true;
};

// Instantiates every schema over the (name-sorted) objects. Fact indices are
// assigned in first-seen order: init atoms, goal atoms, `extra_atoms`, then
// atoms of the kept actions in grounding order. `extra_atoms` lets callers
// register hypothesis fluents that no action touches.
PlanningTask ground(const DomainDef &domain, const ProblemDef &problem,
                    const GroundingOptions &options = {},
                    std::span<const Atom> extra_atoms = {});

}  // namespace goalrec::model
