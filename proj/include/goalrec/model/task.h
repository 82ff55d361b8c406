#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace goalrec::model {

using FactId = int;
using ActionId = int;
// Sorted, duplicate-free list of fact indices.
using FactSet = std::vector<FactId>;

struct GroundAction {
    ActionId id = 0;
    // Fully instantiated signature, e.g. "(stack a b)".
    std::string name;
    FactSet pre;
    FactSet add;
    FactSet del;
    int cost = 1;
};

// Grounded STRIPS task. Immutable once built; share it by const reference
// or shared_ptr<const PlanningTask>.
class PlanningTask {
public:
    PlanningTask() = default;
    PlanningTask(std::vector<std::string> facts, std::vector<GroundAction> actions, FactSet init,
                 FactSet goal);

    const std::vector<std::string> &facts() const { return facts_; }
    const std::vector<GroundAction> &actions() const { return actions_; }
    const FactSet &init() const { return init_; }
    const FactSet &goal() const { return goal_; }
    const std::vector<std::string> &warnings() const { return warnings_; }

    std::size_t num_facts() const { return facts_.size(); }
    std::size_t num_actions() const { return actions_.size(); }
    const GroundAction &action(ActionId id) const { return actions_.at(id); }
    const std::string &fact_name(FactId id) const { return facts_.at(id); }

    // Lookups take canonical names ("(on a b)"); see canonical_atom().
    std::optional<FactId> find_fact(std::string_view name) const;
    std::optional<ActionId> find_action(std::string_view name) const;

    // Returns a copy with a different goal (hypothesis tasks).
    PlanningTask with_goal(FactSet goal) const;

    void add_warning(std::string warning) { warnings_.push_back(std::move(warning)); }

private:
    void build_indices();

    std::vector<std::string> facts_;
    std::vector<GroundAction> actions_;
    FactSet init_;
    FactSet goal_;
    std::vector<std::string> warnings_;
    std::unordered_map<std::string, FactId> fact_index_;
    std::unordered_map<std::string, ActionId> action_index_;
};

// Normalizes "( On  A B )" to "(on a b)". Throws ParseError when the text is
// not a single flat parenthesized expression.
std::string canonical_atom(std::string_view text);

FactSet make_fact_set(std::vector<FactId> ids);
bool is_subset(const FactSet &sub, const FactSet &super);

}  // namespace goalrec::model
