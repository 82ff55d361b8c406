#pragma once

#include "goalrec/model/task.h"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace goalrec::oracle {

inline constexpr std::size_t kDefaultExpansionCap = 5'000'000;
inline constexpr std::size_t kDefaultCountsExpansionCap = 2'000'000;
inline constexpr std::size_t kDefaultEnumerateLength = 12;
inline constexpr std::size_t kDefaultEnumerateNodeCap = 2'000'000;

class SearchCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Plan {
    std::vector<model::ActionId> steps;
    long long cost = 0;
};

enum class SearchStatus { Solved, Unreachable, CapExceeded };

std::string_view to_string(SearchStatus status);

struct SearchResult {
    SearchStatus status = SearchStatus::Unreachable;
    Plan plan;
    std::size_t expansions = 0;

    bool solved() const { return status == SearchStatus::Solved; }
};

// Uniform-cost search from the initial state (or `from` when given).
SearchResult optimal_cost(const model::PlanningTask &task, const model::FactSet &goal,
                          std::size_t cap = kDefaultExpansionCap);
SearchResult optimal_cost_from(const model::PlanningTask &task, const model::FactSet &from,
                               const model::FactSet &goal, std::size_t cap = kDefaultExpansionCap);

// Cheapest goal-achieving plan that uses every action a at least k[a] times.
SearchResult optimal_cost_with_counts(const model::PlanningTask &task, const model::FactSet &goal,
                                      const std::map<model::ActionId, int> &k,
                                      std::size_t cap = kDefaultCountsExpansionCap);

struct PlanCheck {
    bool valid = false;
    // Index of the first inapplicable step, or the plan length when the
    // goal fails at the end; -1 when valid.
    long failed_step = -1;
    std::string message;
};

PlanCheck validate_plan(const model::PlanningTask &task, const std::vector<model::ActionId> &plan,
                        const model::FactSet &goal);

// Final state after applying `plan` from init; throws std::invalid_argument
// if some step is inapplicable.
model::FactSet apply_plan(const model::PlanningTask &task,
                          const std::vector<model::ActionId> &plan);

// All goal-achieving plans of length <= max_len, in lexicographic order of
// step sequence. Throws SearchCapExceeded when more than node_cap prefixes
// are visited.
std::vector<Plan> enumerate_plans(const model::PlanningTask &task, const model::FactSet &goal,
                                  std::size_t max_len = kDefaultEnumerateLength,
                                  std::size_t node_cap = kDefaultEnumerateNodeCap);

// Counts of each action in `plan`, indexed by action id.
std::vector<double> count_vector(const model::PlanningTask &task,
                                 const std::vector<model::ActionId> &plan);

}  // namespace goalrec::oracle
