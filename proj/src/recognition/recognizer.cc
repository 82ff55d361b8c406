#include "goalrec/recognition/recognizer.h"

#include "goalrec/util/errors.h"
#include "goalrec/util/parallel.h"
#include "goalrec/util/timer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace goalrec::recognition {

std::string_view to_string(Method method) {
    switch (method) {
    case Method::HC:
        return "hc";
    case Method::HC_U:
        return "hc-u";
    case Method::DELTA:
        return "delta";
    case Method::DELTA_U:
        return "delta-u";
    }
    return "unknown";
}

Method parse_method(std::string_view text) {
    if (text == "hc")
        return Method::HC;
    if (text == "hc-u")
        return Method::HC_U;
    if (text == "delta")
        return Method::DELTA;
    if (text == "delta-u")
        return Method::DELTA_U;
    throw std::invalid_argument("unknown method '" + std::string(text) +
                                "' (expected hc, hc-u, delta or delta-u)");
}

bool uses_uncertainty(Method method) {
    return method == Method::HC_U || method == Method::DELTA_U;
}

bool uses_delta(Method method) {
    return method == Method::DELTA || method == Method::DELTA_U;
}

bool RecognitionReport::is_selected(std::size_t goal_index) const {
    return std::find(selected.begin(), selected.end(), goal_index) != selected.end();
}

constraints::ConstraintSet observation_constraints(const model::ObservationSequence &obs,
                                                   std::size_t num_actions) {
    constraints::ConstraintSet set;
    set.num_actions = num_actions;
    for (const auto &[action, count] : obs.counts()) {
        constraints::LinearConstraint row;
        row.terms.emplace_back(action, 1.0);
        row.rhs = static_cast<double>(count);
        row.source = constraints::ConstraintSource::Observation;
        set.constraints.push_back(std::move(row));
    }
    return set;
}

lp::LinearProgram build_program(const model::PlanningTask &task,
                                const constraints::ConstraintSet &set) {
    lp::LinearProgram program;
    program.num_vars = task.num_actions();
    program.objective.reserve(task.num_actions());
    for (const model::GroundAction &a : task.actions())
        program.objective.push_back(static_cast<double>(a.cost));
    program.constraints = set.constraints;
    return program;
}

namespace {

// Objective value, or infinity when infeasible.
double solve_value(const lp::LinearProgram &program, const std::string &backend,
                   std::vector<double> &counts) {
    lp::LpOutcome outcome = lp::backend_port(program, backend);
    switch (outcome.status) {
    case lp::LpStatus::Optimal:
        counts = std::move(outcome.counts);
        return outcome.value;
    case lp::LpStatus::Infeasible:
        counts.clear();
        return kInfinity;
    case lp::LpStatus::Unbounded:
        break;
    }
    throw SolverError("operator-counting LP reported unbounded");
}

}  // namespace

HypothesisScore score_hypothesis(const model::PlanningTask &task, const model::FactSet &goal,
                                 const model::ObservationSequence &obs,
                                 const RecognitionConfig &config, std::size_t goal_index) {
    HypothesisScore score;
    score.goal_index = goal_index;

    Stopwatch constraint_clock;
    constraints::ConstraintSet base = constraints::base_constraints(task, goal, config.families);
    score.num_constraints = base.constraints.size();
    score.constraint_seconds = constraint_clock.seconds();
    if (base.infeasible)
        return score;

    Stopwatch lp_clock;
    score.h = solve_value(build_program(task, base), config.backend, score.counts_base);
    if (std::isinf(score.h)) {
        score.lp_seconds = lp_clock.seconds();
        return score;
    }
    if (obs.empty()) {
        score.h_hc = score.h;
        score.counts_hc = score.counts_base;
    } else {
        constraints::ConstraintSet with_obs = base;
        with_obs.append(observation_constraints(obs, task.num_actions()));
        score.h_hc = solve_value(build_program(task, with_obs), config.backend, score.counts_hc);
    }
    score.lp_seconds = lp_clock.seconds();
    score.delta = std::isinf(score.h_hc) ? kInfinity : score.h_hc - score.h;
    return score;
}

std::vector<HypothesisScore> score_all(const model::PlanningTask &task,
                                       const model::GoalHypotheses &hyps,
                                       const model::ObservationSequence &obs,
                                       const RecognitionConfig &config) {
    std::vector<HypothesisScore> scores(hyps.goals.size());
    parallel_for(hyps.goals.size(), config.workers, [&](std::size_t i) {
        scores[i] = score_hypothesis(task, hyps.goals[i], obs, config, i);
    });
    return scores;
}

std::optional<double> uncertainty_ratio(std::span<const double> values, std::size_t obs_length) {
    std::optional<double> least;
    for (double v : values)
        if (std::isfinite(v) && (!least || v < *least))
            least = v;
    if (!least)
        return std::nullopt;
    if (*least <= 0.0)
        return 1.0;
    return 1.0 + (*least - static_cast<double>(obs_length)) / *least;
}

std::optional<double> uncertainty(std::span<const HypothesisScore> scores,
                                  std::size_t obs_length) {
    std::vector<double> values;
    for (const HypothesisScore &s : scores)
        values.push_back(s.h_hc);
    return uncertainty_ratio(values, obs_length);
}

RecognitionReport select_goals(std::vector<HypothesisScore> scores, std::size_t obs_length,
                               Method method, const RecognitionConfig &config) {
    Stopwatch clock;
    RecognitionReport report;
    report.method = method;
    report.obs_length = obs_length;
    report.scores = std::move(scores);
    report.uncertainty = uncertainty(report.scores, obs_length);

    if (uses_uncertainty(method) && report.uncertainty) {
        report.applied_ratio = *report.uncertainty;
        if (uses_delta(method) && config.uncertainty_source == UncertaintySource::BaseValues) {
            std::vector<double> base;
            for (const HypothesisScore &s : report.scores)
                base.push_back(s.h);
            // Base h can fall below |O|; never shrink the threshold.
            report.applied_ratio = std::max(1.0, uncertainty_ratio(base, obs_length).value_or(1.0));
        }
    }

    auto metric = [&](const HypothesisScore &s) { return uses_delta(method) ? s.delta : s.h_hc; };
    std::optional<double> least;
    for (const HypothesisScore &s : report.scores)
        if (std::isfinite(metric(s)) && (!least || metric(s) < *least))
            least = metric(s);

    if (!least) {
        report.all_infeasible = true;
        std::vector<std::size_t> order(report.scores.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return report.scores[a].h < report.scores[b].h;
        });
        report.fallback_ranking = std::move(order);
    } else {
        const double threshold = *least * report.applied_ratio + kSelectionTolerance;
        for (const HypothesisScore &s : report.scores)
            if (std::isfinite(metric(s)) && metric(s) <= threshold)
                report.selected.push_back(s.goal_index);
    }

    for (const HypothesisScore &s : report.scores) {
        report.timings.constraints += s.constraint_seconds;
        report.timings.lp += s.lp_seconds;
    }
    report.timings.selection = clock.seconds();
    return report;
}

RecognitionReport recognize(const model::PlanningTask &task, const model::GoalHypotheses &hyps,
                            const model::ObservationSequence &obs, Method method,
                            const RecognitionConfig &config) {
    if (hyps.goals.empty())
        throw std::invalid_argument("recognize: at least one hypothesis required");
    Stopwatch clock;
    std::vector<HypothesisScore> scores = score_all(task, hyps, obs, config);
    double scoring = clock.seconds();
    RecognitionReport report = select_goals(std::move(scores), obs.size(), method, config);
    report.labels = hyps.labels;
    report.timings.scoring_wall = scoring;
    return report;
}

RecognitionReport recognize_hc(const model::PlanningTask &task, const model::GoalHypotheses &hyps,
                               const model::ObservationSequence &obs, bool use_uncertainty,
                               const RecognitionConfig &config) {
    return recognize(task, hyps, obs, use_uncertainty ? Method::HC_U : Method::HC, config);
}

RecognitionReport recognize_delta(const model::PlanningTask &task,
                                  const model::GoalHypotheses &hyps,
                                  const model::ObservationSequence &obs, bool use_uncertainty,
                                  const RecognitionConfig &config) {
    return recognize(task, hyps, obs, use_uncertainty ? Method::DELTA_U : Method::DELTA, config);
}

bool full_observation_guarantee_check(const model::PlanningTask &task,
                                      const model::GoalHypotheses &hyps,
                                      const std::vector<model::ActionId> &plan, std::size_t hidden,
                                      const RecognitionConfig &config) {
    RecognitionReport report =
        recognize_hc(task, hyps, model::ObservationSequence(plan), false, config);
    return report.is_selected(hidden);
}

}  // namespace goalrec::recognition
