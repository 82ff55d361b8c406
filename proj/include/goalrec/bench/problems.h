#pragma once

#include "goalrec/bench/rng.h"
#include "goalrec/model/bundle.h"
#include "goalrec/oracle/search.h"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace goalrec::bench {

// Raised when a problem cannot be built (oracle gave up, hidden goal
// unreachable, not enough spurious actions).
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// round(pct * |plan| / 100) steps, at least one, chosen uniformly and kept
// in plan order. pct must be in (0, 100].
model::ObservationSequence sample_observations(const std::vector<model::ActionId> &plan,
                                               double pct, Rng &rng);

// Actions applicable somewhere in the delete-relaxed reachable set of init
// and absent from `plan`, in id order.
std::vector<model::ActionId> spurious_candidates(const model::PlanningTask &task,
                                                 const std::vector<model::ActionId> &plan);

// Inserts n distinct spurious actions at uniformly random positions.
model::ObservationSequence inject_noise(const model::ObservationSequence &obs,
                                        const model::PlanningTask &task,
                                        const std::vector<model::ActionId> &plan, std::size_t n,
                                        Rng &rng);

// Optimal plan to `waypoint` followed by an optimal plan from there to
// `goal`. nullopt when either leg fails.
std::optional<oracle::Plan> splice_detour(const model::PlanningTask &task,
                                          const model::FactSet &goal, model::FactId waypoint,
                                          std::size_t cap = oracle::kDefaultExpansionCap);

struct PlanOptions {
    bool suboptimal = false;
    std::size_t cap = oracle::kDefaultExpansionCap;
    // Waypoints tried before falling back to the optimal plan.
    std::size_t detour_attempts = 24;
};

struct WitnessPlan {
    oracle::Plan plan;
    long long optimal_cost = 0;
    bool suboptimal = false;
};

// Oracle-optimal plan for `goal`, or a strictly costlier detour when
// options.suboptimal is set and some waypoint yields one.
WitnessPlan witness_plan(const model::PlanningTask &task, const model::FactSet &goal,
                         const PlanOptions &options, Rng &rng);

struct GeneratedProblem {
    model::RecognitionProblem problem;
    WitnessPlan witness;
};

// Witness plan for the hidden hypothesis, sampled at pct, then noised.
GeneratedProblem generate_problem(std::shared_ptr<const model::PlanningTask> task,
                                  const model::GoalHypotheses &hyps, std::size_t hidden,
                                  double pct, std::size_t noise, std::uint64_t seed,
                                  const PlanOptions &options = {});

}  // namespace goalrec::bench
