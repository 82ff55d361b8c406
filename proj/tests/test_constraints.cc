#include "goalrec/bench/domains.h"
#include "goalrec/constraints/generators.h"
#include "goalrec/constraints/hmax.h"
#include "goalrec/lp/linear_program.h"
#include "goalrec/model/bundle.h"
#include "goalrec/oracle/search.h"
#include "goalrec/recognition/recognizer.h"

#include "support/tasks.h"

#include <doctest.h>

#include <set>

using namespace goalrec;
using namespace goalrec::constraints;
using goalrec::testing::chain_task;
using goalrec::testing::random_micro_task;

namespace {

model::PlanningTask without_actions(const model::PlanningTask &task,
                                    const std::set<model::ActionId> &removed) {
    std::vector<model::GroundAction> kept;
    for (const model::GroundAction &a : task.actions()) {
        if (removed.count(a.id))
            continue;
        model::GroundAction copy = a;
        copy.id = static_cast<model::ActionId>(kept.size());
        kept.push_back(copy);
    }
    return model::PlanningTask(task.facts(), kept, task.init(), task.goal());
}

double lp_value(const model::PlanningTask &task, const ConstraintSet &set) {
    if (set.infeasible)
        return recognition::kInfinity;
    lp::LpOutcome outcome = lp::solve_lp(recognition::build_program(task, set));
    return outcome.status == lp::LpStatus::Optimal ? outcome.value : recognition::kInfinity;
}

}  // namespace

TEST_CASE("hmax on the chain task") {
    model::PlanningTask task = chain_task();
    auto costs = unit_costs(task);
    CHECK(hmax(task, task.init(), {1}, costs) == Rational(1));
    CHECK(hmax(task, task.init(), {0}, costs) == Rational(0));
    CHECK_FALSE(hmax(task, {1}, {0}, costs).has_value());
}

TEST_CASE("landmarks on the chain task") {
    model::PlanningTask task = chain_task();
    ConstraintSet set = landmark_constraints(task, {1});
    REQUIRE(set.constraints.size() == 1);
    CHECK(set.constraints[0].terms == std::vector<std::pair<int, double>>{{0, 1.0}});
    CHECK(set.constraints[0].rhs == 1.0);
    CHECK(landmark_constraints(task, {0}).constraints.empty());
    CHECK(landmark_constraints(model::PlanningTask({"(p)", "(q)"}, {}, {0}, {1}), {1}).infeasible);
}

TEST_CASE("every landmark cut disconnects the goal on blocks instances") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        auto text = bench::generate_bundle("blocks", seed).text;
        auto loaded = model::load_bundle(text);
        const model::PlanningTask &task = *loaded.recognition.task;
        for (const model::FactSet &goal : loaded.recognition.hyps.goals) {
            ConstraintSet set = landmark_constraints(task, goal);
            CHECK_FALSE(set.constraints.empty());
            for (const LinearConstraint &row : set.constraints) {
                std::set<model::ActionId> cut;
                for (const auto &[action, coef] : row.terms)
                    cut.insert(action);
                auto reduced = without_actions(task, cut);
                CHECK(oracle::optimal_cost(reduced, goal).status == oracle::SearchStatus::Unreachable);
            }
        }
    }
}

TEST_CASE("net change on the chain task") {
    model::PlanningTask task = chain_task();
    ConstraintSet set = net_change_constraints(task, {1});
    REQUIRE(set.constraints.size() == 2);
    // Fact p: -Y_a >= -1; fact q: Y_a >= 1.
    CHECK(set.constraints[0].terms == std::vector<std::pair<int, double>>{{0, -1.0}});
    CHECK(set.constraints[0].rhs == -1.0);
    CHECK(set.constraints[1].terms == std::vector<std::pair<int, double>>{{0, 1.0}});
    CHECK(set.constraints[1].rhs == 1.0);

    // A fact in init and goal with no producers or consumers gives no row.
    model::PlanningTask idle({"(p)", "(r)"}, {goalrec::testing::make_action(0, "(a)", {}, {1}, {})},
                             {0}, {0});
    ConstraintSet idle_set = net_change_constraints(idle, {0});
    for (const LinearConstraint &row : idle_set.constraints)
        CHECK(row.terms.front().first == 0);
    CHECK(idle_set.constraints.size() == 1);
}

TEST_CASE("post-hoc on the chain task") {
    model::PlanningTask task = chain_task();
    ConstraintSet set = posthoc_constraints(task, {1});
    REQUIRE(set.constraints.size() == 1);
    CHECK(set.constraints[0].terms == std::vector<std::pair<int, double>>{{0, 1.0}});
    CHECK(set.constraints[0].rhs == 1.0);
    CHECK(posthoc_constraints(task, {0}).constraints.empty());
}

TEST_CASE("base constraints follow the family selection") {
    model::PlanningTask task = chain_task();
    ConstraintSet all = base_constraints(task, {1});
    CHECK(all.count(ConstraintSource::Landmark) == 1);
    CHECK(all.count(ConstraintSource::NetChange) == 2);
    CHECK(all.count(ConstraintSource::PostHoc) == 1);
    ConstraintSet nc = base_constraints(task, {1}, FamilySelection::parse("nc"));
    CHECK(nc.constraints.size() == 2);
    CHECK(nc.count(ConstraintSource::NetChange) == 2);
    CHECK(FamilySelection::parse("ph,lm").to_string() == "lm,ph");
    CHECK_THROWS_AS(FamilySelection::parse("lm,xx"), std::invalid_argument);
    CHECK(dump_constraints(nc, task).find(">= 1 [net-change]") != std::string::npos);
}

TEST_CASE("enumerated plans satisfy every constraint family") {
    const std::vector<std::string> configs{"lm", "nc", "ph", "lm,nc", "lm,ph", "nc,ph", "lm,nc,ph"};
    int tasks_with_plans = 0;
    int violations = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        model::PlanningTask task = random_micro_task(seed);
        auto plans = oracle::enumerate_plans(task, task.goal(), 8);
        if (!plans.empty())
            ++tasks_with_plans;
        for (const std::string &config : configs) {
            ConstraintSet set = base_constraints(task, task.goal(), FamilySelection::parse(config));
            if (!plans.empty())
                CHECK_FALSE(set.infeasible);
            for (const oracle::Plan &plan : plans)
                violations += !set.satisfied_by(oracle::count_vector(task, plan.steps));
        }
    }
    CHECK(violations == 0);
    CHECK(tasks_with_plans >= 20);
}

TEST_CASE("LP values are admissible and grow with the families") {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        model::PlanningTask task = random_micro_task(seed);
        oracle::SearchResult best = oracle::optimal_cost(task, task.goal());
        auto costs = unit_costs(task);
        auto h = hmax(task, task.init(), task.goal(), costs);
        double ph = lp_value(task, base_constraints(task, task.goal(), FamilySelection::parse("ph")));
        double lm = lp_value(task, base_constraints(task, task.goal(), FamilySelection::parse("lm")));
        double lm_nc = lp_value(task, base_constraints(task, task.goal(), FamilySelection::parse("lm,nc")));
        double all = lp_value(task, base_constraints(task, task.goal()));
        CHECK(lm <= lm_nc + 1e-6);
        CHECK(lm_nc <= all + 1e-6);
        CHECK(ph <= all + 1e-6);
        if (best.solved()) {
            REQUIRE(h.has_value());
            CHECK(boost::rational_cast<double>(*h) <= static_cast<double>(best.plan.cost));
            CHECK(ph <= static_cast<double>(best.plan.cost) + 1e-6);
            CHECK(all <= static_cast<double>(best.plan.cost) + 1e-6);
        }
    }
}
