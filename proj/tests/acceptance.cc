// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any fails.

#include "goalrec/bench/domains.h"
#include "goalrec/bench/problems.h"
#include "goalrec/bench/suite.h"
#include "goalrec/cli/commands.h"
#include "goalrec/constraints/generators.h"
#include "goalrec/lp/backend.h"
#include "goalrec/model/bundle.h"
#include "goalrec/oracle/search.h"
#include "goalrec/recognition/recognizer.h"
#include "goalrec/util/timer.h"

#include "support/tasks.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace goalrec;
namespace fs = std::filesystem;
using recognition::Method;

namespace {

constexpr double kEps = 1e-6;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string &name, const std::function<Outcome()> &check) {
    Stopwatch clock;
    Outcome outcome;
    try {
        outcome = check();
    } catch (const std::exception &e) {
        outcome.pass = false;
        outcome.detail = std::string("exception: ") + e.what();
    }
    if (!outcome.pass)
        ++failures;
    std::printf("%s %d %s: %s (%.2fs)\n", outcome.pass ? "PASS" : "FAIL", id, name.c_str(),
                outcome.detail.c_str(), clock.seconds());
    std::fflush(stdout);
}

bool same(double a, double b) { return std::fabs(a - b) <= 1e-9; }

const std::vector<std::string> kFamilies{"blocks", "grid", "logistics", "chain"};

// Generated (task, goal, obs) material shared by several criteria.
struct Instance {
    std::string family;
    model::RecognitionProblem problem;
};

std::vector<Instance> generated_instances(std::size_t per_family) {
    const std::vector<std::pair<double, std::size_t>> variants{{30, 0}, {70, 1}, {100, 0}};
    std::vector<Instance> out;
    for (const std::string &family : kFamilies) {
        for (std::size_t k = 0; k < per_family; ++k) {
            std::uint64_t seed = bench::derive_seed(7, {k}, family);
            bench::GeneratedBundle bundle = bench::generate_bundle(family, seed);
            model::LoadedBundle loaded = model::load_bundle(bundle.text);
            const auto &rp = loaded.recognition;
            for (std::size_t v = 0; v < variants.size(); ++v) {
                auto [pct, noise] = variants[v];
                bench::GeneratedProblem gp = bench::generate_problem(
                    rp.task, rp.hyps, *rp.hidden(), pct, noise, bench::derive_seed(seed, {v}, "obs"));
                out.push_back({family, std::move(gp.problem)});
            }
        }
    }
    return out;
}

Outcome criterion_corridor() {
    Stopwatch clock;
    model::BundleText text = model::read_bundle_dir("data/corridor");
    model::LoadedBundle loaded = model::load_bundle(text);
    const auto &rp = loaded.recognition;
    auto obs_from = [&](const char *file) {
        return model::parse_observations(model::read_text_file(fs::path("data/corridor") / file),
                                         *rp.task);
    };
    std::vector<std::string> problems;
    for (const std::string &backend : lp::BackendRegistry::global().names()) {
        recognition::RecognitionConfig config;
        config.backend = backend;
        auto full = recognition::recognize(*rp.task, rp.hyps, rp.obs, Method::DELTA_U, config);
        const auto &s = full.scores;
        if (!(same(s[0].h, 3) && same(s[1].h, 3) && same(s[0].h_hc, 7) && same(s[1].h_hc, 9) &&
              same(s[0].delta, 4) && same(s[1].delta, 6)))
            problems.push_back(backend + ": heuristic values");
        if (full.selected != std::vector<std::size_t>{0})
            problems.push_back(backend + ": full observations selection");

        auto single = recognition::recognize(*rp.task, rp.hyps, obs_from("obs_single.dat"),
                                             Method::DELTA_U, config);
        if (!single.uncertainty || !same(*single.uncertainty, 1.0 + 6.0 / 7.0) ||
            single.selected != std::vector<std::size_t>{0, 1})
            problems.push_back(backend + ": single observation");

        auto four = recognition::recognize(*rp.task, rp.hyps, obs_from("obs_prefix4.dat"),
                                           Method::DELTA_U, config);
        if (!four.uncertainty || !same(*four.uncertainty, 1.0 + 3.0 / 7.0) ||
            four.selected != std::vector<std::size_t>{0})
            problems.push_back(backend + ": four observations");
    }
    double elapsed = clock.seconds();
    if (elapsed >= 1.0)
        problems.push_back("runtime " + std::to_string(elapsed) + "s");
    Outcome o;
    o.pass = problems.empty();
    o.detail = o.pass ? "h=3/3 h_hc=7/9 delta=4/6, U=13/7 and 10/7, selections match"
                      : problems.front();
    return o;
}

Outcome criterion_dominance(const std::vector<Instance> &instances) {
    std::size_t triples = 0, both_finite = 0, violations = 0;
    for (const Instance &inst : instances) {
        const auto &rp = inst.problem;
        for (const auto &goal : rp.hyps.goals) {
            auto score = recognition::score_hypothesis(*rp.task, goal, rp.obs);
            ++triples;
            if (std::isfinite(score.h) && std::isfinite(score.h_hc)) {
                ++both_finite;
                if (score.h_hc < score.h - kEps)
                    ++violations;
            }
        }
    }
    Outcome o;
    o.pass = triples >= 500 && violations == 0;
    o.detail = std::to_string(triples) + " triples over " + std::to_string(kFamilies.size()) +
               " families, " + std::to_string(both_finite) + " finite, " +
               std::to_string(violations) + " violations";
    return o;
}

Outcome criterion_completeness() {
    std::size_t optimal = 0, suboptimal = 0, invalid = 0, missed = 0, attempts = 0;
    const std::size_t quota = 100;
    for (std::size_t k = 0; (optimal < quota || suboptimal < quota) && k < 400; ++k) {
        for (const std::string &family : kFamilies) {
            ++attempts;
            std::uint64_t seed = bench::derive_seed(3, {k}, family);
            model::LoadedBundle loaded = model::load_bundle(bench::generate_bundle(family, seed).text);
            const auto &rp = loaded.recognition;
            const auto &goal = rp.hyps.goals[*rp.hidden()];
            bench::Rng rng(bench::derive_seed(seed, {}, "plan"));
            bench::PlanOptions options;
            options.suboptimal = optimal >= suboptimal;
            bench::WitnessPlan witness = bench::witness_plan(*rp.task, goal, options, rng);
            std::size_t &bucket = witness.suboptimal ? suboptimal : optimal;
            if (bucket >= quota)
                continue;
            ++bucket;
            oracle::PlanCheck check = oracle::validate_plan(*rp.task, witness.plan.steps, goal);
            if (!check.valid) {
                ++invalid;
                continue;
            }
            if (!recognition::full_observation_guarantee_check(*rp.task, rp.hyps,
                                                              witness.plan.steps, *rp.hidden()))
                ++missed;
        }
    }
    Outcome o;
    std::size_t total = optimal + suboptimal;
    o.pass = optimal >= quota && suboptimal >= quota && invalid == 0 && missed == 0;
    o.detail = std::to_string(total) + " problems (" + std::to_string(optimal) + " optimal, " +
               std::to_string(suboptimal) + " suboptimal detours), " + std::to_string(invalid) +
               " invalid plans, " + std::to_string(missed) + " misses";
    return o;
}

Outcome criterion_admissibility(const std::vector<Instance> &instances) {
    std::size_t checks = 0, skipped = 0, violations = 0;
    for (const Instance &inst : instances) {
        const auto &rp = inst.problem;
        for (const auto &goal : rp.hyps.goals) {
            auto score = recognition::score_hypothesis(*rp.task, goal, rp.obs);
            oracle::SearchResult plain = oracle::optimal_cost(*rp.task, goal);
            if (plain.status == oracle::SearchStatus::CapExceeded) {
                ++skipped;
            } else {
                ++checks;
                double cost = plain.solved() ? static_cast<double>(plain.plan.cost) : recognition::kInfinity;
                if (score.h > cost + kEps)
                    ++violations;
            }
            oracle::SearchResult counted =
                oracle::optimal_cost_with_counts(*rp.task, goal, rp.obs.counts());
            if (counted.status == oracle::SearchStatus::CapExceeded) {
                ++skipped;
            } else {
                ++checks;
                double cost = counted.solved() ? static_cast<double>(counted.plan.cost) : recognition::kInfinity;
                if (score.h_hc > cost + kEps)
                    ++violations;
            }
        }
    }
    Outcome o;
    o.pass = violations == 0 && checks > 0;
    o.detail = std::to_string(checks) + " oracle comparisons, " + std::to_string(skipped) +
               " oracle cap hits, " + std::to_string(violations) + " violations";
    return o;
}

Outcome criterion_soundness() {
    const std::vector<std::string> configs{"lm", "nc", "ph", "lm,nc", "lm,ph", "nc,ph", "lm,nc,ph"};
    std::size_t tasks = 0, plans_checked = 0, violations = 0;
    for (std::uint64_t seed = 0; tasks < 60 && seed < 5000; ++seed) {
        model::PlanningTask task = testing::random_micro_task(seed);
        auto plans = oracle::enumerate_plans(task, task.goal(), 8);
        if (plans.empty())
            continue;
        ++tasks;
        for (const std::string &config : configs) {
            auto set = constraints::base_constraints(task, task.goal(),
                                                     constraints::FamilySelection::parse(config));
            for (const oracle::Plan &plan : plans) {
                ++plans_checked;
                if (set.infeasible || !set.satisfied_by(oracle::count_vector(task, plan.steps)))
                    ++violations;
            }
        }
    }
    Outcome o;
    o.pass = tasks >= 50 && violations == 0;
    o.detail = std::to_string(tasks) + " micro tasks, " + std::to_string(plans_checked) +
               " plan/config checks, " + std::to_string(violations) + " violations";
    return o;
}

bool contains_all(const std::vector<std::size_t> &outer, const std::vector<std::size_t> &inner) {
    for (std::size_t x : inner)
        if (std::find(outer.begin(), outer.end(), x) == outer.end())
            return false;
    return true;
}

Outcome criterion_uncertainty(const std::vector<Instance> &instances) {
    std::size_t problems = 0, below_one = 0, not_superset = 0;
    for (const Instance &inst : instances) {
        const auto &rp = inst.problem;
        auto scores = recognition::score_all(*rp.task, rp.hyps, rp.obs);
        auto pick = [&](Method m) { return recognition::select_goals(scores, rp.obs.size(), m); };
        auto hc = pick(Method::HC), hc_u = pick(Method::HC_U);
        auto delta = pick(Method::DELTA), delta_u = pick(Method::DELTA_U);
        ++problems;
        if (hc.uncertainty && *hc.uncertainty < 1.0)
            ++below_one;
        if (!contains_all(hc_u.selected, hc.selected) || !contains_all(delta_u.selected, delta.selected))
            ++not_superset;
    }
    Outcome o;
    o.pass = below_one == 0 && not_superset == 0;
    o.detail = std::to_string(problems) + " problems, " + std::to_string(below_one) +
               " with U<1, " + std::to_string(not_superset) + " non-superset selections";
    return o;
}

Outcome criterion_trend() {
    bench::SuiteSpec spec;
    for (const std::string &family : kFamilies)
        spec.generators.push_back({family, 12});
    spec.levels = {10, 30, 50, 70, 100};
    spec.noise = {0, 2};
    spec.seed = 1;
    spec.methods = {Method::DELTA, Method::DELTA_U};
    bench::SuiteResult result = bench::run_suite(spec);

    auto accuracy = [&](Method method, double pct, std::size_t noise, std::size_t &count) {
        std::size_t correct = 0;
        count = 0;
        for (const bench::SuiteRow &row : result.rows) {
            if (row.method != method || row.pct != pct || row.noise != noise)
                continue;
            ++count;
            correct += row.correct;
        }
        return count ? static_cast<double>(correct) / static_cast<double>(count) : 0.0;
    };
    std::size_t n_du = 0, n_d = 0, n_noisy = 0;
    double du10 = accuracy(Method::DELTA_U, 10, 0, n_du);
    double d10 = accuracy(Method::DELTA, 10, 0, n_d);
    double d100 = accuracy(Method::DELTA, 100, 2, n_noisy);
    std::size_t solver_failures = 0;
    for (const bench::SuiteRow &row : result.rows)
        if (row.status != "ok" && row.status != "all-infeasible")
            ++solver_failures;

    char buffer[256];
    std::snprintf(buffer, sizeof buffer,
                  "%zu problems per level; delta-u@10%%=%.3f vs delta@10%%=%.3f; "
                  "delta@100%% noise 2=%.3f; %zu failed runs",
                  n_noisy, du10, d10, d100, solver_failures);
    Outcome o;
    o.pass = n_noisy >= 40 && n_du >= 40 && du10 >= d10 && d100 >= 0.8 && solver_failures == 0;
    o.detail = buffer;
    return o;
}

Outcome criterion_backends() {
    std::size_t programs = 0, disagreements = 0;
    std::vector<std::string> backends = lp::BackendRegistry::global().names();
    std::string other;
    for (const std::string &name : backends)
        if (name != lp::kDefaultBackend)
            other = name;
    if (other.empty())
        return {false, "no alternative backend registered"};

    const std::vector<std::string> configs{"lm", "nc", "ph", "lm,nc", "lm,ph", "nc,ph", "lm,nc,ph"};
    bench::Rng rng(2024);
    auto fuzz = [&](const model::PlanningTask &task, const model::FactSet &goal) {
        auto set = constraints::base_constraints(
            task, goal, constraints::FamilySelection::parse(configs[rng.below(configs.size())]));
        if (set.infeasible)
            return;
        // Random observation rows, some unreachable counts included.
        std::size_t extra = rng.below(4);
        for (std::size_t i = 0; i < extra && task.num_actions() > 0; ++i) {
            constraints::LinearConstraint row;
            row.terms.emplace_back(rng.below(task.num_actions()), 1.0);
            row.rhs = static_cast<double>(rng.range(1, 3));
            set.constraints.push_back(row);
        }
        lp::LinearProgram program = recognition::build_program(task, set);
        lp::LpOutcome a = lp::backend_port(program, lp::kDefaultBackend);
        lp::LpOutcome b = lp::backend_port(program, other);
        ++programs;
        if (a.status != b.status ||
            (a.status == lp::LpStatus::Optimal && std::fabs(a.value - b.value) > kEps))
            ++disagreements;
    };
    for (std::uint64_t seed = 0; programs < 600; ++seed) {
        model::PlanningTask task = testing::random_micro_task(seed, 8, 7);
        fuzz(task, task.goal());
    }
    for (std::size_t k = 0; programs < 1000; ++k) {
        const std::string &family = kFamilies[k % kFamilies.size()];
        model::LoadedBundle loaded =
            model::load_bundle(bench::generate_bundle(family, bench::derive_seed(11, {k}, family)).text);
        const auto &rp = loaded.recognition;
        fuzz(*rp.task, rp.hyps.goals[rng.below(rp.hyps.goals.size())]);
    }
    Outcome o;
    o.pass = disagreements == 0;
    o.detail = std::to_string(programs) + " programs, " + lp::kDefaultBackend + " vs " + other +
               ", " + std::to_string(disagreements) + " disagreements";
    return o;
}

Outcome criterion_determinism() {
    fs::path root = fs::temp_directory_path() / "goalrec-acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    model::write_text_file(root / "manifest.json", R"({
  "seed": 9,
  "levels": [30, 100],
  "noise": [0, 2],
  "suboptimal": "half",
  "bundles": [")" + fs::absolute("data/corridor").string() + R"("],
  "generate": [{"family": "blocks", "count": 3}, {"family": "grid", "count": 3},
               {"family": "logistics", "count": 3}, {"family": "chain", "count": 3}]
})");
    auto bench_run = [&](const std::string &out, const std::string &workers) {
        std::ostringstream sink, err;
        return cli::run({"goalrec", "bench", "-m", (root / "manifest.json").string(), "--out",
                         (root / out).string(), "--workers", workers},
                        sink, err);
    };
    int first = bench_run("run1", "1");
    int second = bench_run("run2", "4");
    if (first != 0 || second != 0)
        return {false, "bench exited with " + std::to_string(first) + "/" + std::to_string(second)};
    std::string a = model::read_text_file(root / "run1" / "rows.csv");
    std::string b = model::read_text_file(root / "run2" / "rows.csv");
    std::size_t lines = static_cast<std::size_t>(std::count(a.begin(), a.end(), '\n'));
    Outcome o;
    o.pass = a == b && lines > 1;
    o.detail = std::to_string(lines - 1) + " rows, " + (a == b ? "byte-identical" : "differ");
    return o;
}

}  // namespace

int main() {
    report(1, "corridor golden fixture", criterion_corridor);
    std::vector<Instance> instances = generated_instances(44);
    report(2, "dominance h_hc >= h", [&] { return criterion_dominance(instances); });
    report(3, "full observation completeness", criterion_completeness);
    report(4, "admissibility vs oracle", [&] { return criterion_admissibility(instances); });
    report(5, "constraint soundness", criterion_soundness);
    report(6, "uncertainty invariants", [&] { return criterion_uncertainty(instances); });
    report(7, "desk-scale trend", criterion_trend);
    report(8, "cross-backend agreement", criterion_backends);
    report(9, "bench determinism", criterion_determinism);
    return failures == 0 ? 0 : 1;
}
