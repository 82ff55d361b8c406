#include "goalrec/model/task.h"

#include "goalrec/model/sexpr.h"
#include "goalrec/util/errors.h"

#include <algorithm>
#include <stdexcept>

namespace goalrec::model {

PlanningTask::PlanningTask(std::vector<std::string> facts, std::vector<GroundAction> actions,
                           FactSet init, FactSet goal)
    : facts_(std::move(facts)), actions_(std::move(actions)),
      init_(make_fact_set(std::move(init))), goal_(make_fact_set(std::move(goal))) {
    build_indices();
}

void PlanningTask::build_indices() {
    const auto check = [this](const FactSet &set, const std::string &what) {
        for (FactId f : set)
            if (f < 0 || static_cast<std::size_t>(f) >= facts_.size())
                throw std::invalid_argument(what + " references unknown fact " + std::to_string(f));
    };
    check(init_, "init");
    check(goal_, "goal");
    for (std::size_t i = 0; i < facts_.size(); ++i)
        if (!fact_index_.emplace(facts_[i], static_cast<FactId>(i)).second)
            throw std::invalid_argument("duplicate fact " + facts_[i]);
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        GroundAction &a = actions_[i];
        a.id = static_cast<ActionId>(i);
        a.pre = make_fact_set(std::move(a.pre));
        a.add = make_fact_set(std::move(a.add));
        a.del = make_fact_set(std::move(a.del));
        check(a.pre, a.name);
        check(a.add, a.name);
        check(a.del, a.name);
        if (a.cost < 0)
            throw std::invalid_argument("negative cost for " + a.name);
        for (FactId f : a.add)
            if (std::binary_search(a.del.begin(), a.del.end(), f))
                throw std::invalid_argument("add/delete overlap in " + a.name);
        if (!action_index_.emplace(a.name, a.id).second)
            throw std::invalid_argument("duplicate action " + a.name);
    }
}

std::optional<FactId> PlanningTask::find_fact(std::string_view name) const {
    auto it = fact_index_.find(std::string(name));
    if (it == fact_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<ActionId> PlanningTask::find_action(std::string_view name) const {
    auto it = action_index_.find(std::string(name));
    if (it == action_index_.end())
        return std::nullopt;
    return it->second;
}

PlanningTask PlanningTask::with_goal(FactSet goal) const {
    PlanningTask copy = *this;
    copy.goal_ = make_fact_set(std::move(goal));
    for (FactId f : copy.goal_)
        if (f < 0 || static_cast<std::size_t>(f) >= facts_.size())
            throw std::invalid_argument("goal references unknown fact " + std::to_string(f));
    return copy;
}

std::string canonical_atom(std::string_view text) {
    SExpr expr = parse_single_sexpr(text);
    if (!expr.is_list || expr.items.empty())
        throw ParseError("expected a parenthesized atom, got '" + std::string(text) + "'");
    for (const SExpr &item : expr.items)
        if (item.is_list)
            throw ParseError("nested list in atom '" + std::string(text) + "'");
    return to_string(expr);
}

FactSet make_fact_set(std::vector<FactId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

bool is_subset(const FactSet &sub, const FactSet &super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace goalrec::model
