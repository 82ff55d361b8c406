#include "goalrec/bench/problems.h"

#include "goalrec/constraints/hmax.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace goalrec::bench {

model::ObservationSequence sample_observations(const std::vector<model::ActionId> &plan,
                                               double pct, Rng &rng) {
    if (!(pct > 0.0 && pct <= 100.0))
        throw std::invalid_argument("observability percentage must be in (0, 100]");
    if (plan.empty())
        return model::ObservationSequence();
    std::size_t size = static_cast<std::size_t>(
        std::llround(pct * static_cast<double>(plan.size()) / 100.0));
    size = std::clamp<std::size_t>(size, 1, plan.size());
    std::vector<std::size_t> indices(plan.size());
    for (std::size_t i = 0; i < indices.size(); ++i)
        indices[i] = i;
    rng.shuffle(indices);
    indices.resize(size);
    std::sort(indices.begin(), indices.end());
    std::vector<model::ActionId> obs;
    obs.reserve(size);
    for (std::size_t i : indices)
        obs.push_back(plan[i]);
    return model::ObservationSequence(std::move(obs));
}

std::vector<model::ActionId> spurious_candidates(const model::PlanningTask &task,
                                                 const std::vector<model::ActionId> &plan) {
    const auto costs = constraints::unit_costs(task);
    const auto reach = constraints::hmax_fact_values(task, task.init(), costs);
    std::set<model::ActionId> used(plan.begin(), plan.end());
    std::vector<model::ActionId> result;
    for (const model::GroundAction &a : task.actions()) {
        if (used.count(a.id))
            continue;
        bool applicable = std::all_of(a.pre.begin(), a.pre.end(),
                                      [&](model::FactId f) { return reach[f].has_value(); });
        if (applicable)
            result.push_back(a.id);
    }
    return result;
}

model::ObservationSequence inject_noise(const model::ObservationSequence &obs,
                                        const model::PlanningTask &task,
                                        const std::vector<model::ActionId> &plan, std::size_t n,
                                        Rng &rng) {
    if (n == 0)
        return obs;
    std::vector<model::ActionId> pool = spurious_candidates(task, plan);
    if (pool.size() < n)
        throw GenerationError("only " + std::to_string(pool.size()) +
                              " spurious actions available, " + std::to_string(n) + " requested");
    std::vector<model::ActionId> seq = obs.actions();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pick = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[pick]);
        std::size_t position = rng.below(seq.size() + 1);
        seq.insert(seq.begin() + static_cast<long>(position), pool[i]);
    }
    return model::ObservationSequence(std::move(seq));
}

std::optional<oracle::Plan> splice_detour(const model::PlanningTask &task,
                                          const model::FactSet &goal, model::FactId waypoint,
                                          std::size_t cap) {
    oracle::SearchResult first = oracle::optimal_cost(task, {waypoint}, cap);
    if (!first.solved())
        return std::nullopt;
    model::FactSet middle = oracle::apply_plan(task, first.plan.steps);
    oracle::SearchResult second = oracle::optimal_cost_from(task, middle, goal, cap);
    if (!second.solved())
        return std::nullopt;
    oracle::Plan plan = first.plan;
    plan.steps.insert(plan.steps.end(), second.plan.steps.begin(), second.plan.steps.end());
    plan.cost += second.plan.cost;
    return plan;
}

WitnessPlan witness_plan(const model::PlanningTask &task, const model::FactSet &goal,
                         const PlanOptions &options, Rng &rng) {
    oracle::SearchResult best = oracle::optimal_cost(task, goal, options.cap);
    if (best.status == oracle::SearchStatus::CapExceeded)
        throw GenerationError("oracle expansion cap exceeded");
    if (!best.solved())
        throw GenerationError("hidden goal is unreachable");
    WitnessPlan witness;
    witness.plan = best.plan;
    witness.optimal_cost = best.plan.cost;
    if (!options.suboptimal)
        return witness;

    std::vector<model::FactId> waypoints;
    for (std::size_t f = 0; f < task.num_facts(); ++f)
        if (!std::binary_search(task.init().begin(), task.init().end(),
                                static_cast<model::FactId>(f)))
            waypoints.push_back(static_cast<model::FactId>(f));
    rng.shuffle(waypoints);
    std::size_t attempts = std::min(options.detour_attempts, waypoints.size());
    for (std::size_t i = 0; i < attempts; ++i) {
        std::optional<oracle::Plan> detour = splice_detour(task, goal, waypoints[i], options.cap);
        if (detour && detour->cost > witness.optimal_cost) {
            witness.plan = std::move(*detour);
            witness.suboptimal = true;
            break;
        }
    }
    return witness;
}

GeneratedProblem generate_problem(std::shared_ptr<const model::PlanningTask> task,
                                  const model::GoalHypotheses &hyps, std::size_t hidden,
                                  double pct, std::size_t noise, std::uint64_t seed,
                                  const PlanOptions &options) {
    if (hidden >= hyps.goals.size())
        throw std::invalid_argument("hidden hypothesis index out of range");
    Rng rng(seed);
    GeneratedProblem result;
    result.witness = witness_plan(*task, hyps.goals[hidden], options, rng);
    model::ObservationSequence obs = sample_observations(result.witness.plan.steps, pct, rng);
    obs = inject_noise(obs, *task, result.witness.plan.steps, noise, rng);
    result.problem.task = std::move(task);
    result.problem.hyps = hyps;
    result.problem.hyps.hidden = hidden;
    result.problem.obs = std::move(obs);
    return result;
}

}  // namespace goalrec::bench
