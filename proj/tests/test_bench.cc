#include "goalrec/bench/domains.h"
#include "goalrec/bench/problems.h"
#include "goalrec/bench/suite.h"
#include "goalrec/util/errors.h"

#include "support/tasks.h"

#include <doctest.h>

#include <set>

using namespace goalrec;
using namespace goalrec::bench;

namespace {

std::vector<model::ActionId> iota_plan(int n) {
    std::vector<model::ActionId> plan;
    for (int i = 0; i < n; ++i)
        plan.push_back(i);
    return plan;
}

}  // namespace

TEST_CASE("observation sampling sizes and order") {
    Rng rng(5);
    auto plan = iota_plan(10);
    CHECK(sample_observations(plan, 100, rng).actions() == plan);
    auto thirty = sample_observations(plan, 30, rng);
    REQUIRE(thirty.size() == 3);
    CHECK(thirty.actions()[0] < thirty.actions()[1]);
    CHECK(thirty.actions()[1] < thirty.actions()[2]);
    CHECK(sample_observations(iota_plan(3), 10, rng).size() == 1);
    CHECK(sample_observations(iota_plan(4), 50, rng).size() == 2);
    CHECK_THROWS_AS(sample_observations(plan, 0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_observations(plan, 120, rng), std::invalid_argument);

    Rng a(77), b(77);
    CHECK(sample_observations(plan, 50, a).actions() == sample_observations(plan, 50, b).actions());
}

TEST_CASE("noise injection") {
    auto loaded = model::load_bundle(generate_bundle("grid", 2).text);
    const auto &rec = loaded.recognition;
    auto witness = oracle::optimal_cost(*rec.task, rec.hyps.goals[*rec.hidden()]);
    REQUIRE(witness.solved());
    model::ObservationSequence obs(witness.plan.steps);
    Rng rng(3);
    CHECK(inject_noise(obs, *rec.task, witness.plan.steps, 0, rng).actions() == obs.actions());
    auto noisy = inject_noise(obs, *rec.task, witness.plan.steps, 2, rng);
    CHECK(noisy.size() == obs.size() + 2);
    std::set<model::ActionId> in_plan(witness.plan.steps.begin(), witness.plan.steps.end());
    int spurious = 0;
    for (model::ActionId a : noisy.actions())
        spurious += !in_plan.count(a);
    CHECK(spurious == 2);

    Rng again(3);
    inject_noise(obs, *rec.task, witness.plan.steps, 0, again);
    CHECK(inject_noise(obs, *rec.task, witness.plan.steps, 2, again).actions() == noisy.actions());

    model::PlanningTask chain = goalrec::testing::chain_task();
    CHECK_THROWS_AS(inject_noise(model::ObservationSequence({0}), chain, {0}, 1, rng),
                    GenerationError);
}

TEST_CASE("detour through the top corridor gives the seven-step plan") {
    auto loaded = model::load_bundle(corridor_bundle().text);
    const auto &rec = loaded.recognition;
    auto waypoint = rec.task->find_fact("(at cx0y3)");
    REQUIRE(waypoint);
    auto detour = splice_detour(*rec.task, rec.hyps.goals[0], *waypoint);
    REQUIRE(detour);
    CHECK(detour->steps.size() == 7);
    CHECK(oracle::validate_plan(*rec.task, detour->steps, rec.hyps.goals[0]).valid);

    Rng rng(1);
    PlanOptions options;
    options.suboptimal = true;
    WitnessPlan w = witness_plan(*rec.task, rec.hyps.goals[0], options, rng);
    CHECK(w.suboptimal);
    CHECK(w.plan.cost > w.optimal_cost);
    CHECK(oracle::validate_plan(*rec.task, w.plan.steps, rec.hyps.goals[0]).valid);
}

TEST_CASE("generate_problem at full observability reproduces the witness") {
    auto loaded = model::load_bundle(generate_bundle("logistics", 3).text);
    const auto &rec = loaded.recognition;
    GeneratedProblem p = generate_problem(rec.task, rec.hyps, *rec.hidden(), 100, 0, 9);
    CHECK(p.problem.obs.actions() == p.witness.plan.steps);
    CHECK(p.problem.hidden() == rec.hidden());
    GeneratedProblem q = generate_problem(rec.task, rec.hyps, *rec.hidden(), 30, 2, 9);
    GeneratedProblem r = generate_problem(rec.task, rec.hyps, *rec.hidden(), 30, 2, 9);
    CHECK(q.problem.obs.actions() == r.problem.obs.actions());
}

TEST_CASE("generators are deterministic and solvable") {
    for (const std::string &family : generator_families()) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            GeneratedBundle a = generate_bundle(family, seed);
            GeneratedBundle b = generate_bundle(family, seed);
            CHECK(a.text.problem == b.text.problem);
            CHECK(a.text.hyps == b.text.hyps);
            auto loaded = model::load_bundle(a.text);
            const auto &rec = loaded.recognition;
            REQUIRE(rec.hidden());
            CHECK(rec.hyps.size() >= 2);
            CHECK(oracle::optimal_cost(*rec.task, rec.hyps.goals[*rec.hidden()]).solved());
        }
    }
    CHECK_THROWS_AS(generate_bundle("depots", 1), std::invalid_argument);
}

TEST_CASE("manifest parsing") {
    SuiteSpec spec = parse_manifest(R"({"seed": 3, "noisy": true, "methods": ["delta"],
        "generate": [{"family": "grid", "count": 2}]})");
    CHECK(spec.levels == kDefaultNoisyLevels);
    CHECK(spec.noise == std::vector<std::size_t>{2});
    CHECK(spec.methods == std::vector<recognition::Method>{recognition::Method::DELTA});
    SuiteSpec back = parse_manifest(manifest_to_json(spec));
    CHECK(back.levels == spec.levels);
    CHECK(back.seed == 3);
    CHECK_THROWS_AS(parse_manifest(R"({"levels": [0], "generate": [{"family": "grid"}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_manifest("{"), ParseError);
    CHECK_THROWS_AS(parse_manifest(R"({"generate": []})"), std::invalid_argument);
}

TEST_CASE("suite rows, metrics and determinism") {
    SuiteSpec spec;
    spec.generators = {{"grid", 2}, {"chain", 1}};
    spec.levels = {30, 100};
    spec.noise = {0};
    spec.seed = 4;
    SuiteResult result = run_suite(spec);
    CHECK(result.rows.size() == 3 * 2 * 4);
    for (const SuiteRow &row : result.rows) {
        CHECK(row.status == "ok");
        CHECK(row.spread == row.selected.size());
        if (row.uncertainty)
            CHECK(*row.uncertainty >= 1.0);
    }
    for (const AggregateCell &cell : result.aggregate) {
        CHECK(cell.accuracy >= 0.0);
        CHECK(cell.accuracy <= 1.0);
        if (cell.pct == 100 && cell.method == recognition::Method::HC)
            CHECK(cell.accuracy == 1.0);
    }
    // Reordering work across threads leaves the rows unchanged.
    spec.workers = 3;
    CHECK(rows_csv(run_suite(spec)) == rows_csv(result));
    CHECK(rows_csv(result).rfind("domain,problem_id,pct,noise,method,correct,spread,U,", 0) == 0);
}

TEST_CASE("aggregate definitions") {
    std::vector<SuiteRow> rows;
    for (int i = 0; i < 10; ++i) {
        SuiteRow row;
        row.domain = "d";
        row.problem_id = "p" + std::to_string(i);
        row.pct = 50;
        row.correct = i != 0;
        row.spread = 1;
        row.selected = {0};
        rows.push_back(row);
    }
    auto cells = aggregate_rows(rows);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].domain == "d");
    CHECK(cells[0].accuracy == doctest::Approx(0.9));
    CHECK(cells[0].spread_mean == 1.0);
    CHECK(cells[1].domain == "all");
}

TEST_CASE("delta-u never selects fewer goals than delta") {
    SuiteSpec spec;
    spec.generators = {{"blocks", 3}, {"grid", 3}, {"logistics", 3}, {"chain", 3}};
    spec.levels = {10, 50};
    spec.noise = {2};
    spec.methods = {recognition::Method::DELTA, recognition::Method::DELTA_U};
    SuiteResult result = run_suite(spec);
    for (std::size_t i = 0; i + 1 < result.rows.size(); i += 2) {
        const SuiteRow &plain = result.rows[i];
        const SuiteRow &widened = result.rows[i + 1];
        REQUIRE(plain.method == recognition::Method::DELTA);
        REQUIRE(widened.method == recognition::Method::DELTA_U);
        CHECK(widened.spread >= plain.spread);
    }
}
