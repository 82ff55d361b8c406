#pragma once

#include "goalrec/model/task.h"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace goalrec::model {

// Ordered observed actions o_1..o_n with per-action multiplicities k_a.
class ObservationSequence {
public:
    ObservationSequence() = default;
    explicit ObservationSequence(std::vector<ActionId> obs);

    const std::vector<ActionId> &actions() const { return obs_; }
    const std::map<ActionId, int> &counts() const { return counts_; }
    std::size_t size() const { return obs_.size(); }
    bool empty() const { return obs_.empty(); }

private:
    std::vector<ActionId> obs_;
    std::map<ActionId, int> counts_;
};

struct GoalHypotheses {
    std::vector<FactSet> goals;
    // Canonical text per hypothesis, e.g. "(on a b),(clear c)".
    std::vector<std::string> labels;
    std::optional<std::size_t> hidden;

    std::size_t size() const { return goals.size(); }
};

// One parenthesized ground action per nonempty line. Unknown actions raise
// ParseError naming the line.
ObservationSequence parse_observations(std::string_view text, const PlanningTask &task);

// One hypothesis per nonempty line; fluents separated by commas.
GoalHypotheses parse_hypotheses(std::string_view text, const PlanningTask &task);

// Returns the index of the hypothesis whose fact set equals the single
// fluent conjunction in `text`.
std::size_t resolve_hidden_goal(std::string_view text, const GoalHypotheses &hyps,
                                const PlanningTask &task);

// Splits a hypothesis line into canonical atoms ("(on a b)").
std::vector<std::string> split_fluents(std::string_view line);

std::string format_observations(const ObservationSequence &obs, const PlanningTask &task);

}  // namespace goalrec::model
