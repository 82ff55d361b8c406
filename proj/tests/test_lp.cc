#include "goalrec/bench/domains.h"
#include "goalrec/bench/rng.h"
#include "goalrec/lp/backend.h"
#include "goalrec/lp/linear_program.h"
#include "goalrec/model/bundle.h"
#include "goalrec/oracle/search.h"
#include "goalrec/recognition/recognizer.h"
#include "goalrec/util/errors.h"

#include <doctest.h>

#include <cmath>

using namespace goalrec;
using namespace goalrec::lp;

namespace {

LinearConstraint row(std::vector<std::pair<int, double>> terms, double rhs) {
    LinearConstraint c;
    c.terms = std::move(terms);
    c.rhs = rhs;
    return c;
}

LinearProgram program(std::size_t n, std::vector<double> objective,
                      std::vector<LinearConstraint> rows) {
    LinearProgram lp;
    lp.num_vars = n;
    lp.objective = std::move(objective);
    lp.constraints = std::move(rows);
    return lp;
}

std::vector<LinearProgram> small_programs() {
    return {
        program(1, {1}, {row({{0, 1}}, 3)}),
        program(1, {1}, {row({{0, 1}}, 1), row({{0, -1}}, 0)}),
        program(2, {1, 1}, {row({{0, 1}, {1, 1}}, 2), row({{0, 1}, {1, -1}}, 0)}),
    };
}

}  // namespace

TEST_CASE("solve_lp on three hand-checked programs") {
    auto lps = small_programs();
    LpOutcome a = solve_lp(lps[0]);
    CHECK(a.status == LpStatus::Optimal);
    CHECK(a.value == doctest::Approx(3.0));
    CHECK(solve_lp(lps[1]).status == LpStatus::Infeasible);
    LpOutcome c = solve_lp(lps[2]);
    CHECK(c.status == LpStatus::Optimal);
    // Dual (1, 0) certifies 2 as the optimum.
    CHECK(c.value == doctest::Approx(2.0));
    CHECK(c.counts[0] + c.counts[1] == doctest::Approx(2.0));
    CHECK(c.counts[0] >= c.counts[1] - 1e-9);
}

TEST_CASE("unbounded, empty and degenerate programs") {
    CHECK(solve_lp(program(1, {-1}, {row({{0, 1}}, 1)})).status == LpStatus::Unbounded);
    LpOutcome empty = solve_lp(program(3, {1, 1, 1}, {}));
    CHECK(empty.status == LpStatus::Optimal);
    CHECK(empty.value == 0.0);
    CHECK(solve_lp(program(2, {-1, 0}, {})).status == LpStatus::Unbounded);

    // Beale's cycling example, written as a minimization over >= rows.
    LinearProgram beale =
        program(4, {-0.75, 20, -0.5, 6},
                {row({{0, -0.25}, {1, 8}, {2, 1}, {3, -9}}, 0),
                 row({{0, -0.5}, {1, 12}, {2, 0.5}, {3, -3}}, 0), row({{2, -1}}, -1)});
    LpOutcome out = solve_lp(beale);
    REQUIRE(out.status == LpStatus::Optimal);
    CHECK(out.value == doctest::Approx(-1.25));
    CHECK(ExactRationalBackend().solve(beale).value == doctest::Approx(-1.25));
}

TEST_CASE("validate rejects malformed programs") {
    CHECK_THROWS_AS(solve_lp(program(1, {1, 2}, {})), std::invalid_argument);
    CHECK_THROWS_AS(solve_lp(program(1, {1}, {row({{3, 1}}, 1)})), std::invalid_argument);
    CHECK_THROWS_AS(solve_lp(program(1, {1}, {row({{0, NAN}}, 1)})), std::invalid_argument);
}

TEST_CASE("backend registry and port") {
    BackendRegistry &registry = BackendRegistry::global();
    CHECK(registry.contains("simplex"));
    CHECK(registry.contains("exact"));
    for (const LinearProgram &lp : small_programs()) {
        LpOutcome a = backend_port(lp, "simplex");
        LpOutcome b = backend_port(lp, "exact");
        CHECK(a.status == b.status);
        if (a.status == LpStatus::Optimal)
            CHECK(std::abs(a.value - b.value) <= 1e-6);
    }
    BackendRegistry empty;
    CHECK_THROWS_AS(backend_port(small_programs()[0], "simplex", empty), BackendUnavailable);
    CHECK_THROWS_AS(backend_port(small_programs()[0], "cplex"), BackendUnavailable);
}

TEST_CASE("solves are deterministic") {
    auto loaded = model::load_bundle(bench::generate_bundle("logistics", 9).text);
    const auto &rec = loaded.recognition;
    auto set = constraints::base_constraints(*rec.task, rec.hyps.goals[0]);
    LinearProgram lp = recognition::build_program(*rec.task, set);
    LpOutcome first = solve_lp(lp);
    LpOutcome second = solve_lp(lp);
    CHECK(first.status == second.status);
    CHECK(first.value == second.value);
    CHECK(first.counts == second.counts);
}

TEST_CASE("LP value never exceeds the cost of an oracle plan") {
    for (const std::string family : {"blocks", "grid", "logistics", "chain"}) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            auto loaded = model::load_bundle(bench::generate_bundle(family, seed).text);
            const auto &rec = loaded.recognition;
            for (const model::FactSet &goal : rec.hyps.goals) {
                auto best = oracle::optimal_cost(*rec.task, goal);
                if (!best.solved())
                    continue;
                auto set = constraints::base_constraints(*rec.task, goal);
                REQUIRE_FALSE(set.infeasible);
                LinearProgram lp = recognition::build_program(*rec.task, set);
                LpOutcome out = solve_lp(lp);
                REQUIRE(out.status == LpStatus::Optimal);
                auto counts = oracle::count_vector(*rec.task, best.plan.steps);
                CHECK(set.satisfied_by(counts));
                CHECK(out.value <= static_cast<double>(best.plan.cost) + 1e-6);
            }
        }
    }
}

TEST_CASE("random dense programs agree across backends") {
    bench::Rng rng(42);
    int optimal = 0, infeasible = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.range(1, 6));
        const int m = rng.range(0, 6);
        std::vector<double> objective;
        for (std::size_t i = 0; i < n; ++i)
            objective.push_back(rng.range(0, 4));
        std::vector<LinearConstraint> rows;
        for (int r = 0; r < m; ++r) {
            std::vector<std::pair<int, double>> terms;
            for (std::size_t i = 0; i < n; ++i)
                if (rng.below(2))
                    terms.emplace_back(static_cast<int>(i), rng.range(-3, 3));
            rows.push_back(row(terms, rng.range(-3, 4)));
        }
        LinearProgram lp = program(n, objective, rows);
        LpOutcome a = solve_lp(lp);
        LpOutcome b = ExactRationalBackend().solve(lp);
        REQUIRE(a.status == b.status);
        if (a.status == LpStatus::Optimal) {
            ++optimal;
            CHECK(std::abs(a.value - b.value) <= 1e-6);
        } else {
            ++infeasible;
        }
    }
    CHECK(optimal > 50);
    CHECK(infeasible > 5);
}

TEST_CASE("LP text export") {
    std::string text = to_lp_format(small_programs()[2], {"(a)", "(b)"});
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("y0 = (a)") != std::string::npos);
    CHECK(text.find(">= 2") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
}
