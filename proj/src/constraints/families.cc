#include "goalrec/constraints/generators.h"
#include "goalrec/constraints/hmax.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace goalrec::constraints {

ConstraintSet net_change_constraints(const model::PlanningTask &task, const model::FactSet &goal) {
    ConstraintSet result;
    result.num_actions = task.num_actions();
    const std::size_t n = task.num_facts();
    std::vector<std::map<int, double>> rows(n);
    for (const model::GroundAction &a : task.actions()) {
        for (model::FactId p : a.add)
            if (!std::binary_search(a.pre.begin(), a.pre.end(), p))
                rows[p][a.id] += 1.0;
        // Deletes of facts not in pre may be no-ops; they get coefficient 0.
        for (model::FactId p : a.del)
            if (std::binary_search(a.pre.begin(), a.pre.end(), p))
                rows[p][a.id] -= 1.0;
    }
    for (std::size_t p = 0; p < n; ++p) {
        const auto fact = static_cast<model::FactId>(p);
        double rhs = (std::binary_search(goal.begin(), goal.end(), fact) ? 1.0 : 0.0) -
                     (std::binary_search(task.init().begin(), task.init().end(), fact) ? 1.0 : 0.0);
        LinearConstraint row;
        row.rhs = rhs;
        row.source = ConstraintSource::NetChange;
        for (const auto &[action, coef] : rows[p])
            if (coef != 0.0)
                row.terms.emplace_back(action, coef);
        if (row.terms.empty()) {
            if (rhs > 0.0 && !result.infeasible) {
                result.infeasible = true;
                result.infeasible_reason = "no action can produce goal fact " + task.fact_name(fact);
            }
            continue;
        }
        result.constraints.push_back(std::move(row));
    }
    return result;
}

namespace {

std::vector<model::ActionId> relevant_actions(const model::PlanningTask &task, model::FactId goal_fact,
                                              const std::vector<std::optional<Rational>> &reach) {
    std::vector<std::vector<model::ActionId>> achievers(task.num_facts());
    for (const model::GroundAction &a : task.actions()) {
        bool reachable = std::all_of(a.pre.begin(), a.pre.end(),
                                     [&](model::FactId p) { return reach[p].has_value(); });
        if (!reachable)
            continue;
        for (model::FactId e : a.add)
            achievers[e].push_back(a.id);
    }
    std::vector<bool> fact_seen(task.num_facts(), false);
    std::vector<bool> action_seen(task.num_actions(), false);
    std::vector<model::FactId> stack{goal_fact};
    fact_seen[goal_fact] = true;
    while (!stack.empty()) {
        model::FactId f = stack.back();
        stack.pop_back();
        for (model::ActionId a : achievers[f]) {
            if (action_seen[a])
                continue;
            action_seen[a] = true;
            for (model::FactId p : task.action(a).pre) {
                if (!fact_seen[p]) {
                    fact_seen[p] = true;
                    stack.push_back(p);
                }
            }
        }
    }
    std::vector<model::ActionId> result;
    for (std::size_t a = 0; a < action_seen.size(); ++a)
        if (action_seen[a])
            result.push_back(static_cast<model::ActionId>(a));
    return result;
}

}  // namespace

ConstraintSet posthoc_constraints(const model::PlanningTask &task, const model::FactSet &goal) {
    ConstraintSet result;
    result.num_actions = task.num_actions();
    std::vector<Rational> costs = task_costs(task);
    std::vector<std::optional<Rational>> reach = hmax_fact_values(task, task.init(), costs);
    for (model::FactId g : goal) {
        if (!reach.at(g)) {
            result.infeasible = true;
            result.infeasible_reason = "goal fact " + task.fact_name(g) + " unreachable";
            continue;
        }
        const Rational &bound = *reach[g];
        if (bound == Rational(0))
            continue;
        LinearConstraint row;
        row.rhs = boost::rational_cast<double>(bound);
        row.source = ConstraintSource::PostHoc;
        for (model::ActionId a : relevant_actions(task, g, reach))
            if (task.action(a).cost != 0)
                row.terms.emplace_back(a, static_cast<double>(task.action(a).cost));
        result.constraints.push_back(std::move(row));
    }
    return result;
}

FamilySelection FamilySelection::parse(std::string_view text) {
    FamilySelection selection{false, false, false};
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view item = text.substr(start, end - start);
        if (item == "lm")
            selection.landmarks = true;
        else if (item == "nc")
            selection.net_change = true;
        else if (item == "ph")
            selection.post_hoc = true;
        else
            throw std::invalid_argument("unknown constraint family '" + std::string(item) +
                                        "' (expected lm, nc or ph)");
        start = end + 1;
    }
    if (!selection.any())
        throw std::invalid_argument("no constraint family selected");
    return selection;
}

std::string FamilySelection::to_string() const {
    std::string out;
    auto add = [&out](bool on, const char *name) {
        if (on)
            out += (out.empty() ? "" : ",") + std::string(name);
    };
    add(landmarks, "lm");
    add(net_change, "nc");
    add(post_hoc, "ph");
    return out;
}

ConstraintSet base_constraints(const model::PlanningTask &task, const model::FactSet &goal,
                               const FamilySelection &families) {
    if (!families.any())
        throw std::invalid_argument("base_constraints: empty family selection");
    ConstraintSet result;
    result.num_actions = task.num_actions();
    // Unreachable goals are reported whatever families are selected.
    std::vector<Rational> costs = task_costs(task);
    if (!hmax(task, task.init(), goal, costs)) {
        result.infeasible = true;
        result.infeasible_reason = "goal unreachable in the delete relaxation";
    }
    if (families.landmarks)
        result.append(landmark_constraints(task, goal));
    if (families.net_change)
        result.append(net_change_constraints(task, goal));
    if (families.post_hoc)
        result.append(posthoc_constraints(task, goal));
    return result;
}

std::string dump_constraints(const ConstraintSet &set, const model::PlanningTask &task) {
    std::ostringstream out;
    if (set.infeasible)
        out << "# infeasible: " << set.infeasible_reason << "\n";
    for (const LinearConstraint &c : set.constraints) {
        out << "sum";
        for (const auto &[var, coef] : c.terms)
            out << ' ' << coef << '*' << task.action(var).name;
        out << " >= " << c.rhs << " [" << to_string(c.source) << "]\n";
    }
    return out.str();
}

}  // namespace goalrec::constraints
