#include "goalrec/constraints/hmax.h"

#include <functional>
#include <queue>
#include <stdexcept>

namespace goalrec::constraints {

std::vector<Rational> unit_costs(const model::PlanningTask &task) {
    return std::vector<Rational>(task.num_actions(), Rational(1));
}

std::vector<Rational> task_costs(const model::PlanningTask &task) {
    std::vector<Rational> costs;
    costs.reserve(task.num_actions());
    for (const model::GroundAction &a : task.actions())
        costs.emplace_back(a.cost);
    return costs;
}

std::vector<std::optional<Rational>> hmax_fact_values(const model::PlanningTask &task,
                                                      const model::FactSet &from,
                                                      std::span<const Rational> costs) {
    if (costs.size() != task.num_actions())
        throw std::invalid_argument("hmax: one cost per action required");
    const std::size_t num_facts = task.num_facts();
    std::vector<std::optional<Rational>> value(num_facts);
    std::vector<std::vector<model::ActionId>> precondition_of(num_facts);
    std::vector<std::size_t> unsatisfied(task.num_actions());
    for (const model::GroundAction &a : task.actions()) {
        unsatisfied[a.id] = a.pre.size();
        for (model::FactId p : a.pre)
            precondition_of[p].push_back(a.id);
    }

    using Entry = std::pair<Rational, model::FactId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    auto relax = [&](model::FactId f, const Rational &cost) {
        if (!value[f] || cost < *value[f]) {
            value[f] = cost;
            queue.emplace(cost, f);
        }
    };
    // An action's cost once its last precondition is settled: the max over
    // preconditions, since facts are popped in nondecreasing order.
    auto fire = [&](const model::GroundAction &a, const Rational &support) {
        Rational reach = support + costs[a.id];
        for (model::FactId e : a.add)
            relax(e, reach);
    };

    for (model::FactId f : from)
        relax(f, Rational(0));
    for (const model::GroundAction &a : task.actions())
        if (a.pre.empty())
            fire(a, Rational(0));

    std::vector<bool> settled(num_facts, false);
    while (!queue.empty()) {
        auto [cost, f] = queue.top();
        queue.pop();
        if (settled[f] || cost != *value[f])
            continue;
        settled[f] = true;
        for (model::ActionId id : precondition_of[f])
            if (--unsatisfied[id] == 0)
                fire(task.action(id), cost);
    }
    return value;
}

std::optional<Rational> hmax(const model::PlanningTask &task, const model::FactSet &from,
                             const model::FactSet &goal, std::span<const Rational> costs) {
    std::vector<std::optional<Rational>> values = hmax_fact_values(task, from, costs);
    Rational result(0);
    for (model::FactId g : goal) {
        if (!values.at(g))
            return std::nullopt;
        result = std::max(result, *values[g]);
    }
    return result;
}

}  // namespace goalrec::constraints
