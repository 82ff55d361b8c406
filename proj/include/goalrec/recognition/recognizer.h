#pragma once

#include "goalrec/constraints/generators.h"
#include "goalrec/lp/backend.h"
#include "goalrec/model/observations.h"
#include "goalrec/model/task.h"

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace goalrec::recognition {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Slack when comparing LP values against selection thresholds.
inline constexpr double kSelectionTolerance = 1e-6;

enum class Method { HC, HC_U, DELTA, DELTA_U };

std::string_view to_string(Method method);
// Accepts "hc", "hc-u", "delta", "delta-u"; throws std::invalid_argument.
Method parse_method(std::string_view text);
bool uses_uncertainty(Method method);
bool uses_delta(Method method);

// Which heuristic values feed the uncertainty ratio for the delta methods.
enum class UncertaintySource { HcValues, BaseValues };

struct RecognitionConfig {
    constraints::FamilySelection families;
    std::string backend = lp::kDefaultBackend;
    UncertaintySource uncertainty_source = UncertaintySource::HcValues;
    // 0 means std::thread::hardware_concurrency().
    unsigned workers = 0;
};

struct HypothesisScore {
    std::size_t goal_index = 0;
    double h = kInfinity;
    double h_hc = kInfinity;
    double delta = kInfinity;
    std::vector<double> counts_base;
    std::vector<double> counts_hc;
    std::size_t num_constraints = 0;
    double constraint_seconds = 0.0;
    double lp_seconds = 0.0;
};

struct Timings {
    double parse_ground = 0.0;
    double constraints = 0.0;
    double lp = 0.0;
    double selection = 0.0;
    double scoring_wall = 0.0;

    double total() const { return parse_ground + scoring_wall + selection; }
};

struct RecognitionReport {
    Method method = Method::DELTA_U;
    std::vector<HypothesisScore> scores;
    std::vector<std::string> labels;
    std::size_t obs_length = 0;
    // Uncertainty ratio from the h_HC values; nullopt when every
    // hypothesis is infeasible.
    std::optional<double> uncertainty;
    // Multiplier actually applied to the minimum (1 for hc / delta).
    double applied_ratio = 1.0;
    std::vector<std::size_t> selected;
    bool all_infeasible = false;
    // Hypotheses ordered by base h; filled only when all_infeasible. Not a
    // recognition result, only a diagnostic.
    std::vector<std::size_t> fallback_ranking;
    Timings timings;

    bool is_selected(std::size_t goal_index) const;
};

// Y_a >= k_a for every observed action a.
constraints::ConstraintSet observation_constraints(const model::ObservationSequence &obs,
                                                   std::size_t num_actions);

lp::LinearProgram build_program(const model::PlanningTask &task,
                                const constraints::ConstraintSet &set);

// h from the base families, h_HC with the observation rows added,
// delta = h_HC - h. Infeasible programs give infinity. Throws SolverError
// when the LP backend fails.
HypothesisScore score_hypothesis(const model::PlanningTask &task, const model::FactSet &goal,
                                 const model::ObservationSequence &obs,
                                 const RecognitionConfig &config = {},
                                 std::size_t goal_index = 0);

// Scores every hypothesis, concurrently when config.workers > 1. The result
// is ordered by hypothesis index.
std::vector<HypothesisScore> score_all(const model::PlanningTask &task,
                                       const model::GoalHypotheses &hyps,
                                       const model::ObservationSequence &obs,
                                       const RecognitionConfig &config = {});

// U = 1 + (m - |O|) / m with m the least finite value in `values`.
// nullopt when no value is finite; 1 when m == 0.
std::optional<double> uncertainty_ratio(std::span<const double> values, std::size_t obs_length);
std::optional<double> uncertainty(std::span<const HypothesisScore> scores, std::size_t obs_length);

// Applies the selection rule of `method` to precomputed scores.
RecognitionReport select_goals(std::vector<HypothesisScore> scores, std::size_t obs_length,
                               Method method, const RecognitionConfig &config = {});

RecognitionReport recognize(const model::PlanningTask &task, const model::GoalHypotheses &hyps,
                            const model::ObservationSequence &obs, Method method,
                            const RecognitionConfig &config = {});

// {G : h_HC(G) <= min h_HC * U}, U = 1 unless use_uncertainty.
RecognitionReport recognize_hc(const model::PlanningTask &task, const model::GoalHypotheses &hyps,
                               const model::ObservationSequence &obs, bool use_uncertainty,
                               const RecognitionConfig &config = {});

// {G : delta(G) <= min delta * U}, U = 1 unless use_uncertainty.
RecognitionReport recognize_delta(const model::PlanningTask &task,
                                  const model::GoalHypotheses &hyps,
                                  const model::ObservationSequence &obs, bool use_uncertainty,
                                  const RecognitionConfig &config = {});

// Runs recognize_hc (U = 1) with the complete plan as observations; true
// iff the hidden goal is selected.
bool full_observation_guarantee_check(const model::PlanningTask &task,
                                      const model::GoalHypotheses &hyps,
                                      const std::vector<model::ActionId> &plan, std::size_t hidden,
                                      const RecognitionConfig &config = {});

}  // namespace goalrec::recognition
