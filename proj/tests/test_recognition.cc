#include "goalrec/bench/domains.h"
#include "goalrec/model/bundle.h"
#include "goalrec/recognition/recognizer.h"
#include "goalrec/recognition/report_io.h"

#include "support/tasks.h"

#include <doctest.h>

using namespace goalrec;
using namespace goalrec::recognition;

namespace {

struct Corridor {
    model::LoadedBundle loaded;
    model::ObservationSequence full;

    Corridor() : loaded(model::load_bundle(bench::corridor_bundle().text)) {
        full = loaded.recognition.obs;
    }

    const model::PlanningTask &task() const { return *loaded.recognition.task; }
    const model::GoalHypotheses &hyps() const { return loaded.recognition.hyps; }

    model::ObservationSequence pick(std::vector<std::size_t> steps) const {
        std::vector<model::ActionId> obs;
        for (std::size_t i : steps)
            obs.push_back(full.actions().at(i));
        return model::ObservationSequence(obs);
    }
};

model::GoalHypotheses hyps_of(std::vector<model::FactSet> goals) {
    model::GoalHypotheses hyps;
    for (std::size_t i = 0; i < goals.size(); ++i)
        hyps.labels.push_back("g" + std::to_string(i));
    hyps.goals = std::move(goals);
    return hyps;
}

}  // namespace

TEST_CASE("observation constraints count multiplicities") {
    model::PlanningTask task = goalrec::testing::commuting_task();
    auto set = observation_constraints(model::ObservationSequence({0, 1, 0}), task.num_actions());
    REQUIRE(set.constraints.size() == 2);
    CHECK(set.constraints[0].terms == std::vector<std::pair<int, double>>{{0, 1.0}});
    CHECK(set.constraints[0].rhs == 2.0);
    CHECK(set.constraints[1].rhs == 1.0);
    CHECK(observation_constraints(model::ObservationSequence(), 2).constraints.empty());

    Corridor fig;
    CHECK(observation_constraints(fig.full, fig.task().num_actions()).constraints.size() == 7);
}

TEST_CASE("grid example with the complete plan observed") {
    Corridor fig;
    HypothesisScore g1 = score_hypothesis(fig.task(), fig.hyps().goals[0], fig.full);
    HypothesisScore g2 = score_hypothesis(fig.task(), fig.hyps().goals[1], fig.full);
    CHECK(g1.h == 3.0);
    CHECK(g2.h == 3.0);
    CHECK(g1.h_hc == 7.0);
    CHECK(g2.h_hc == 9.0);
    CHECK(g1.delta == 4.0);
    CHECK(g2.delta == 6.0);

    for (Method m : {Method::HC, Method::HC_U, Method::DELTA, Method::DELTA_U}) {
        RecognitionReport report = recognize(fig.task(), fig.hyps(), fig.full, m);
        CHECK(report.selected == std::vector<std::size_t>{0});
        CHECK(*report.uncertainty == 1.0);
    }
}

TEST_CASE("grid example with one and four observations") {
    Corridor fig;
    RecognitionReport one = recognize_delta(fig.task(), fig.hyps(), fig.pick({2}), true);
    CHECK(one.scores[0].delta == 4.0);
    CHECK(one.scores[1].delta == 6.0);
    CHECK(*one.uncertainty == doctest::Approx(1.0 + 6.0 / 7.0));
    CHECK(one.selected == std::vector<std::size_t>{0, 1});
    CHECK(recognize_delta(fig.task(), fig.hyps(), fig.pick({2}), false).selected ==
          std::vector<std::size_t>{0});

    RecognitionReport four = recognize_delta(fig.task(), fig.hyps(), fig.pick({0, 1, 2, 3}), true);
    CHECK(*four.uncertainty == doctest::Approx(1.0 + 3.0 / 7.0));
    CHECK(four.selected == std::vector<std::size_t>{0});

    // With h_HC = 7 and 9 the hc-u threshold 7 * 10/7 = 10 admits both goals.
    RecognitionReport hc_four = recognize_hc(fig.task(), fig.hyps(), fig.pick({0, 1, 2, 3}), true);
    CHECK(hc_four.selected == std::vector<std::size_t>{0, 1});
}

TEST_CASE("the detour plan is recognized under full observation") {
    Corridor fig;
    CHECK(full_observation_guarantee_check(fig.task(), fig.hyps(), fig.full.actions(), 0));
    model::PlanningTask chain = goalrec::testing::chain_task();
    CHECK(full_observation_guarantee_check(chain, hyps_of({{1}}), {0}, 0));
}

TEST_CASE("uncertainty ratio") {
    std::vector<double> seven{7.0, 9.0};
    CHECK(*uncertainty_ratio(seven, 1) == doctest::Approx(1.0 + 6.0 / 7.0));
    CHECK(*uncertainty_ratio(seven, 4) == doctest::Approx(1.0 + 3.0 / 7.0));
    CHECK(*uncertainty_ratio(seven, 7) == 1.0);
    std::vector<double> none{kInfinity};
    CHECK_FALSE(uncertainty_ratio(none, 1).has_value());
    std::vector<double> zero{0.0, 2.0};
    CHECK(*uncertainty_ratio(zero, 0) == 1.0);
}

TEST_CASE("selection edge cases") {
    HypothesisScore a, b, c;
    a.goal_index = 0;
    b.goal_index = 1;
    c.goal_index = 2;
    a.h = b.h = c.h = 2;
    a.h_hc = b.h_hc = 4;
    c.h_hc = 5;
    a.delta = b.delta = 2;
    c.delta = 3;
    auto ties = select_goals({a, b, c}, 2, Method::HC);
    CHECK(ties.selected == std::vector<std::size_t>{0, 1});

    a.delta = b.delta = c.delta = 0;
    CHECK(select_goals({a, b, c}, 4, Method::DELTA_U).selected.size() == 3);

    // min delta = 0 collapses the threshold to 0.
    c.delta = 0.5;
    CHECK(select_goals({a, b, c}, 1, Method::DELTA_U).selected == std::vector<std::size_t>{0, 1});

    HypothesisScore dead;
    dead.goal_index = 3;
    dead.h = 1;
    auto with_dead = select_goals({a, dead}, 1, Method::HC_U);
    CHECK(with_dead.selected == std::vector<std::size_t>{0});
}

TEST_CASE("empty observations select every feasible goal with zero delta") {
    auto loaded = model::load_bundle(bench::generate_bundle("grid", 4).text);
    const auto &rec = loaded.recognition;
    auto report = recognize_delta(*rec.task, rec.hyps, model::ObservationSequence(), false);
    for (const HypothesisScore &s : report.scores) {
        if (std::isinf(s.h))
            continue;
        CHECK(s.h_hc == s.h);
        CHECK(s.delta == 0.0);
        CHECK(report.is_selected(s.goal_index));
    }
}

TEST_CASE("all hypotheses infeasible gives an empty selection and a fallback ranking") {
    model::PlanningTask chain = goalrec::testing::chain_task();
    auto hyps = hyps_of({{1}, {0}});
    auto report = recognize_hc(chain, hyps, model::ObservationSequence({0, 0}), true);
    CHECK(report.all_infeasible);
    CHECK(report.selected.empty());
    CHECK_FALSE(report.uncertainty.has_value());
    CHECK(report.fallback_ranking == std::vector<std::size_t>{1, 0});
    CHECK(std::isinf(report.scores[0].h_hc));
    CHECK(std::isinf(report.scores[0].delta));
}

TEST_CASE("base-value uncertainty never shrinks the threshold") {
    Corridor fig;
    RecognitionConfig config;
    config.uncertainty_source = UncertaintySource::BaseValues;
    auto report = recognize_delta(fig.task(), fig.hyps(), fig.full, true, config);
    CHECK(report.applied_ratio == 1.0);
    auto one = recognize_delta(fig.task(), fig.hyps(), fig.pick({2}), true, config);
    CHECK(one.applied_ratio == doctest::Approx(1.0 + 2.0 / 3.0));
}

TEST_CASE("scores do not depend on the worker count") {
    auto loaded = model::load_bundle(bench::generate_bundle("blocks", 8).text);
    const auto &rec = loaded.recognition;
    model::ObservationSequence obs(std::vector<model::ActionId>{0, 1});
    RecognitionConfig serial, parallel;
    serial.workers = 1;
    parallel.workers = 4;
    auto a = score_all(*rec.task, rec.hyps, obs, serial);
    auto b = score_all(*rec.task, rec.hyps, obs, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].h == b[i].h);
        CHECK(a[i].h_hc == b[i].h_hc);
        CHECK(a[i].counts_hc == b[i].counts_hc);
    }
}

TEST_CASE("report JSON round trip") {
    Corridor fig;
    auto report = recognize(fig.task(), fig.hyps(), fig.pick({2}), Method::DELTA_U);
    auto back = report_from_json(report_to_json(report));
    CHECK(back.method == report.method);
    CHECK(back.selected == report.selected);
    CHECK(back.uncertainty == report.uncertainty);
    CHECK(back.labels == report.labels);
    REQUIRE(back.scores.size() == report.scores.size());
    for (std::size_t i = 0; i < back.scores.size(); ++i) {
        CHECK(back.scores[i].h_hc == report.scores[i].h_hc);
        CHECK(back.scores[i].counts_hc == report.scores[i].counts_hc);
    }
    CHECK(report_to_json(back) == report_to_json(report));

    model::PlanningTask chain = goalrec::testing::chain_task();
    auto dead = recognize_hc(chain, hyps_of({{1}}), model::ObservationSequence({0, 0}), false);
    auto dead_back = report_from_json(report_to_json(dead));
    CHECK(std::isinf(dead_back.scores[0].h_hc));
    CHECK(dead_back.all_infeasible);
    CHECK(format_report(dead).find("fallback ranking") != std::string::npos);
}

TEST_CASE("method names") {
    CHECK(parse_method("delta-u") == Method::DELTA_U);
    CHECK(to_string(Method::HC_U) == "hc-u");
    CHECK_THROWS_AS(parse_method("delta-sc"), std::invalid_argument);
}
