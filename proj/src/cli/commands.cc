#include "goalrec/cli/commands.h"

#include "goalrec/bench/domains.h"
#include "goalrec/bench/suite.h"
#include "goalrec/constraints/generators.h"
#include "goalrec/lp/linear_program.h"
#include "goalrec/model/bundle.h"
#include "goalrec/oracle/search.h"
#include "goalrec/recognition/recognizer.h"
#include "goalrec/recognition/report_io.h"
#include "goalrec/util/errors.h"
#include "goalrec/util/timer.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace goalrec::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::size_t env_cap(const char *name, std::size_t fallback) {
    const char *value = std::getenv(name);
    if (!value || !*value)
        return fallback;
    try {
        return static_cast<std::size_t>(std::stoull(value));
    } catch (const std::exception &) {
        throw std::invalid_argument(std::string("environment variable ") + name +
                                    " is not a number");
    }
}

model::GroundingOptions grounding_options() {
    model::GroundingOptions options;
    options.max_actions = env_cap("GOALREC_MAX_ACTIONS", options.max_actions);
    return options;
}

struct InputOptions {
    std::string bundle;
    std::string domain;
    std::string problem;
    std::string hyps;
    std::string obs;
    std::string real_hyp;

    void add_to(CLI::App *app) {
        app->add_option("-b,--bundle", bundle,
                        "Bundle directory (domain.pddl, template.pddl, hyps.dat, obs.dat, "
                        "real_hyp.dat)");
        app->add_option("-d,--domain", domain, "Domain PDDL file");
        app->add_option("-p,--problem", problem, "Problem PDDL file (initial state)");
        app->add_option("-y,--hyps", hyps, "Goal hypotheses file");
        app->add_option("-o,--obs", obs, "Observation file");
        app->add_option("--real-hyp", real_hyp, "Hidden goal file");
    }

    // Explicit files override the matching bundle files.
    model::BundleText load(bool require_obs) const {
        model::BundleText text;
        fs::path dir = bundle;
        auto pick = [&](const std::string &given, const char *file) -> std::optional<fs::path> {
            if (!given.empty())
                return fs::path(given);
            if (!bundle.empty())
                return dir / file;
            return std::nullopt;
        };
        if (!bundle.empty() && !fs::is_directory(dir))
            throw ParseError("bundle directory not found: " + bundle);
        auto required = [&](const std::string &given, const char *file, const char *flag) {
            std::optional<fs::path> path = pick(given, file);
            if (!path)
                throw ParseError(std::string("missing input: pass ") + flag + " or --bundle");
            if (!fs::exists(*path))
                throw ParseError("file not found: " + path->string());
            return model::read_text_file(*path);
        };
        text.domain = required(domain, "domain.pddl", "--domain");
        text.problem = required(problem, "template.pddl", "--problem");
        text.hyps = required(hyps, "hyps.dat", "--hyps");
        if (require_obs) {
            text.obs = required(obs, "obs.dat", "--obs");
        } else if (auto path = pick(obs, "obs.dat"); path && fs::exists(*path)) {
            text.obs = model::read_text_file(*path);
        }
        if (auto path = pick(real_hyp, "real_hyp.dat"); path && fs::exists(*path))
            text.real_hyp = model::read_text_file(*path);
        else if (!real_hyp.empty())
            throw ParseError("file not found: " + real_hyp);
        return text;
    }
};

std::vector<std::string> action_names(const model::PlanningTask &task) {
    std::vector<std::string> names;
    for (const model::GroundAction &a : task.actions())
        names.push_back(a.name);
    return names;
}

void dump_programs(const fs::path &dir, const model::PlanningTask &task,
                   const model::GoalHypotheses &hyps, const model::ObservationSequence &obs,
                   const constraints::FamilySelection &families) {
    fs::create_directories(dir);
    const auto names = action_names(task);
    for (std::size_t i = 0; i < hyps.goals.size(); ++i) {
        constraints::ConstraintSet base = constraints::base_constraints(task, hyps.goals[i], families);
        constraints::ConstraintSet with_obs = base;
        with_obs.append(recognition::observation_constraints(obs, task.num_actions()));
        const std::string stem = "hyp" + std::to_string(i);
        std::string note = base.infeasible ? "\\ infeasible: " + base.infeasible_reason + "\n" : "";
        model::write_text_file(dir / (stem + "_base.lp"),
                               note + lp::to_lp_format(recognition::build_program(task, base), names));
        model::write_text_file(dir / (stem + "_hc.lp"),
                               note +
                                   lp::to_lp_format(recognition::build_program(task, with_obs), names));
    }
}

void dump_constraint_text(std::ostream &out, const model::PlanningTask &task,
                          const model::GoalHypotheses &hyps,
                          const constraints::FamilySelection &families) {
    for (std::size_t i = 0; i < hyps.goals.size(); ++i) {
        constraints::ConstraintSet set = constraints::base_constraints(task, hyps.goals[i], families);
        out << "; hypothesis " << i << ": " << hyps.labels[i];
        if (set.infeasible)
            out << " (infeasible: " << set.infeasible_reason << ")";
        out << "\n" << constraints::dump_constraints(set, task);
    }
}

struct RecognizeOptions {
    InputOptions input;
    std::string method = "delta-u";
    std::string families = "lm,nc,ph";
    std::string backend = lp::kDefaultBackend;
    std::string uncertainty_source = "hc";
    bool json_lines = false;
    std::string dump_lp;
    bool dump_constraints = false;
    unsigned workers = 0;
};

recognition::RecognitionConfig make_config(const std::string &families, const std::string &backend,
                                           const std::string &source, unsigned workers) {
    recognition::RecognitionConfig config;
    config.families = constraints::FamilySelection::parse(families);
    config.backend = backend;
    if (source == "base")
        config.uncertainty_source = recognition::UncertaintySource::BaseValues;
    else if (source != "hc")
        throw std::invalid_argument("--uncertainty-source must be hc or base");
    config.workers = workers;
    return config;
}

int cmd_recognize(const RecognizeOptions &opt, std::ostream &out, std::ostream &err) {
    Stopwatch load_clock;
    model::BundleText text = opt.input.load(true);
    model::LoadedBundle loaded = model::load_bundle(text, grounding_options());
    const double parse_seconds = load_clock.seconds();
    const model::RecognitionProblem &rec = loaded.recognition;
    recognition::RecognitionConfig config =
        make_config(opt.families, opt.backend, opt.uncertainty_source, opt.workers);
    recognition::Method method = recognition::parse_method(opt.method);

    for (const std::string &warning : rec.task->warnings())
        err << "warning: " << warning << "\n";
    if (!opt.dump_lp.empty())
        dump_programs(opt.dump_lp, *rec.task, rec.hyps, rec.obs, config.families);
    if (opt.dump_constraints)
        dump_constraint_text(opt.json_lines ? err : out, *rec.task, rec.hyps, config.families);

    recognition::RecognitionReport report =
        recognition::recognize(*rec.task, rec.hyps, rec.obs, method, config);
    report.timings.parse_ground = parse_seconds;

    if (opt.json_lines) {
        out << recognition::report_to_json(report) << "\n";
    } else {
        out << recognition::format_report(report);
        if (rec.hidden())
            out << "hidden goal " << *rec.hidden() << " "
                << (report.is_selected(*rec.hidden()) ? "selected" : "not selected") << "\n";
    }
    return report.all_infeasible ? kExitAllInfeasible : kExitOk;
}

struct BenchOptions {
    std::string manifest;
    std::string out_dir = "bench-out";
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    bool json_lines = false;
};

int cmd_bench(const BenchOptions &opt, std::ostream &out, std::ostream &err) {
    bench::SuiteSpec spec = bench::read_manifest(opt.manifest);
    if (opt.seed)
        spec.seed = *opt.seed;
    if (opt.workers)
        spec.workers = *opt.workers;
    spec.oracle_cap = env_cap("GOALREC_ORACLE_CAP", spec.oracle_cap);
    bench::SuiteResult result = bench::run_suite(spec);
    bench::write_suite_outputs(result, opt.out_dir);
    std::size_t failures = 0;
    for (const bench::SuiteRow &row : result.rows)
        failures += row.status != "ok" && row.status != "all-infeasible";
    if (opt.json_lines) {
        for (const bench::AggregateCell &cell : result.aggregate) {
            json line{{"domain", cell.domain},
                      {"pct", cell.pct},
                      {"noise", cell.noise},
                      {"method", std::string(recognition::to_string(cell.method))},
                      {"problems", cell.problems},
                      {"time_s", cell.time_mean},
                      {"accuracy", cell.accuracy},
                      {"spread", cell.spread_mean},
                      {"failures", cell.failures}};
            out << line.dump() << "\n";
        }
    } else {
        out << bench::format_aggregate_table(result);
        out << result.rows.size() << " rows written to " << opt.out_dir << "\n";
    }
    if (failures)
        err << failures << " rows recorded a failure status\n";
    return kExitOk;
}

struct GenOptions {
    std::string manifest;
    std::string family;
    std::size_t count = 1;
    std::uint64_t seed = 1;
    std::string out_dir = "generated";
    std::vector<double> levels;
    std::vector<std::size_t> noise;
    std::string suboptimal;
};

std::string obs_file_name(double pct, std::size_t noise) {
    std::ostringstream name;
    name << "obs_p" << pct << "_n" << noise << ".dat";
    return name.str();
}

int cmd_gen(const GenOptions &opt, std::ostream &out, std::ostream &) {
    bench::SuiteSpec spec;
    if (!opt.manifest.empty()) {
        spec = bench::read_manifest(opt.manifest);
    } else {
        if (opt.family.empty())
            throw std::invalid_argument("gen needs --manifest or --family");
        spec.generators.push_back({opt.family, opt.count});
        spec.seed = opt.seed;
    }
    if (!opt.levels.empty())
        spec.levels = opt.levels;
    if (!opt.noise.empty())
        spec.noise = opt.noise;
    if (opt.suboptimal == "all")
        spec.suboptimal = bench::SuboptimalMode::All;
    else if (opt.suboptimal == "half")
        spec.suboptimal = bench::SuboptimalMode::Half;
    else if (!opt.suboptimal.empty() && opt.suboptimal != "none")
        throw std::invalid_argument("--suboptimal must be none, all or half");
    spec.validate();

    const fs::path root = opt.out_dir;
    bench::SuiteSpec written = spec;
    written.generators.clear();
    written.bundles.clear();
    const std::size_t cap = env_cap("GOALREC_ORACLE_CAP", oracle::kDefaultExpansionCap);
    for (const bench::SuiteItem &item : bench::expand_items(spec)) {
        model::BundleText text = item.text;
        model::LoadedBundle loaded = model::load_bundle(text, grounding_options());
        const model::RecognitionProblem &rec = loaded.recognition;
        if (!rec.hidden())
            throw ParseError(item.problem_id + ": bundle has no hidden goal");
        bench::PlanOptions options;
        options.suboptimal = item.suboptimal;
        options.cap = cap;
        bench::Rng plan_rng(bench::derive_seed(spec.seed, {}, item.problem_id + "/plan"));
        bench::WitnessPlan witness =
            bench::witness_plan(*rec.task, rec.hyps.goals[*rec.hidden()], options, plan_rng);
        if (!text.obs)
            text.obs = model::format_observations(model::ObservationSequence(witness.plan.steps),
                                                  *rec.task);
        const fs::path dir = root / item.problem_id;
        model::write_bundle_dir(dir, text);
        for (double pct : spec.levels) {
            for (std::size_t noise : spec.noise) {
                bench::Rng rng(bench::derive_seed(
                    spec.seed, {static_cast<std::uint64_t>(std::llround(pct * 1000)), noise},
                    item.problem_id + "/obs"));
                model::ObservationSequence obs =
                    bench::sample_observations(witness.plan.steps, pct, rng);
                obs = bench::inject_noise(obs, *rec.task, witness.plan.steps, noise, rng);
                model::write_text_file(dir / obs_file_name(pct, noise),
                                       model::format_observations(obs, *rec.task));
            }
        }
        written.bundles.push_back({fs::path(item.problem_id), item.domain});
        out << dir.string() << "\n";
    }
    model::write_text_file(root / "manifest.json", bench::manifest_to_json(written));
    return kExitOk;
}

struct PlanOptions {
    InputOptions input;
    std::optional<std::size_t> hyp;
    std::string goal;
    bool validate_obs = false;
};

model::FactSet pick_goal(const model::LoadedBundle &loaded, std::optional<std::size_t> hyp,
                         const std::string &goal_text, std::string &label) {
    const model::RecognitionProblem &rec = loaded.recognition;
    if (!goal_text.empty()) {
        model::GoalHypotheses parsed = model::parse_hypotheses(goal_text, *rec.task);
        label = parsed.labels.at(0);
        return parsed.goals.at(0);
    }
    std::size_t index = hyp ? *hyp : rec.hidden().value_or(0);
    if (index >= rec.hyps.goals.size())
        throw std::invalid_argument("hypothesis index " + std::to_string(index) + " out of range");
    label = rec.hyps.labels[index];
    return rec.hyps.goals[index];
}

int cmd_plan(const PlanOptions &opt, std::ostream &out, std::ostream &) {
    model::LoadedBundle loaded = model::load_bundle(opt.input.load(false), grounding_options());
    const model::PlanningTask &task = *loaded.recognition.task;
    std::string label;
    model::FactSet goal = pick_goal(loaded, opt.hyp, opt.goal, label);
    if (opt.validate_obs) {
        oracle::PlanCheck check =
            oracle::validate_plan(task, loaded.recognition.obs.actions(), goal);
        out << "observations as plan for " << label << ": "
            << (check.valid ? "valid" : "invalid (" + check.message + ")") << "\n";
        return check.valid ? kExitOk : kExitFailure;
    }
    oracle::SearchResult result =
        oracle::optimal_cost(task, goal, env_cap("GOALREC_ORACLE_CAP", oracle::kDefaultExpansionCap));
    out << "goal: " << label << "\n";
    out << "status: " << oracle::to_string(result.status) << "\n";
    out << "expansions: " << result.expansions << "\n";
    if (!result.solved())
        return kExitFailure;
    out << "cost: " << result.plan.cost << "\n";
    for (model::ActionId a : result.plan.steps)
        out << task.action(a).name << "\n";
    return kExitOk;
}

struct HeuristicOptions {
    InputOptions input;
    std::optional<std::size_t> hyp;
    std::string goal;
    std::string families = "lm,nc,ph";
    std::string backend = lp::kDefaultBackend;
    bool dump_constraints = false;
    std::string dump_lp;
    bool json_lines = false;
};

int cmd_heuristic(const HeuristicOptions &opt, std::ostream &out, std::ostream &) {
    model::LoadedBundle loaded = model::load_bundle(opt.input.load(false), grounding_options());
    const model::RecognitionProblem &rec = loaded.recognition;
    const model::PlanningTask &task = *rec.task;
    std::string label;
    model::FactSet goal = pick_goal(loaded, opt.hyp, opt.goal, label);
    recognition::RecognitionConfig config = make_config(opt.families, opt.backend, "hc", 1);
    recognition::HypothesisScore score = recognition::score_hypothesis(task, goal, rec.obs, config);

    json families = json::object();
    for (const char *name : {"lm", "nc", "ph"}) {
        recognition::RecognitionConfig single = config;
        single.families = constraints::FamilySelection::parse(name);
        recognition::HypothesisScore s = recognition::score_hypothesis(task, goal, rec.obs, single);
        families[name] = {{"h", recognition::format_value(s.h)},
                          {"h_hc", recognition::format_value(s.h_hc)}};
    }
    if (opt.json_lines) {
        json doc{{"goal", label},
                 {"obs_length", rec.obs.size()},
                 {"h", recognition::format_value(score.h)},
                 {"h_hc", recognition::format_value(score.h_hc)},
                 {"delta", recognition::format_value(score.delta)},
                 {"num_constraints", score.num_constraints},
                 {"families", families}};
        out << doc.dump() << "\n";
    } else {
        out << "goal: " << label << "\n";
        out << "observations: " << rec.obs.size() << "\n";
        out << "h: " << recognition::format_value(score.h) << "\n";
        out << "h_hc: " << recognition::format_value(score.h_hc) << "\n";
        out << "delta: " << recognition::format_value(score.delta) << "\n";
        out << "constraints: " << score.num_constraints << "\n";
        for (const char *name : {"lm", "nc", "ph"})
            out << "  " << name << ": h=" << families[name]["h"].get<std::string>()
                << " h_hc=" << families[name]["h_hc"].get<std::string>() << "\n";
    }
    if (opt.dump_constraints) {
        constraints::ConstraintSet set = constraints::base_constraints(task, goal, config.families);
        out << constraints::dump_constraints(set, task);
    }
    if (!opt.dump_lp.empty()) {
        model::GoalHypotheses single;
        single.goals.push_back(goal);
        single.labels.push_back(label);
        dump_programs(opt.dump_lp, task, single, rec.obs, config.families);
    }
    return kExitOk;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Goal recognition with operator-counting LP heuristics", "goalrec"};
    app.require_subcommand(1);

    RecognizeOptions rec_opt;
    CLI::App *recognize = app.add_subcommand("recognize", "Select the goal hypotheses for one problem");
    rec_opt.input.add_to(recognize);
    recognize->add_option("--method", rec_opt.method, "hc, hc-u, delta or delta-u")
        ->check(CLI::IsMember({"hc", "hc-u", "delta", "delta-u"}))
        ->capture_default_str();
    recognize->add_option("--constraints", rec_opt.families, "Constraint families (lm,nc,ph)")
        ->capture_default_str();
    recognize->add_option("--backend", rec_opt.backend, "LP backend (simplex, exact)")
        ->capture_default_str();
    recognize->add_option("--uncertainty-source", rec_opt.uncertainty_source,
                          "Values feeding U for delta methods: hc or base")
        ->capture_default_str();
    recognize->add_flag("--json-lines", rec_opt.json_lines, "Emit one JSON document");
    recognize->add_option("--dump-lp", rec_opt.dump_lp, "Write each LP to this directory");
    recognize->add_flag("--dump-constraints", rec_opt.dump_constraints,
                        "Print the base constraint sets");
    recognize->add_option("--workers", rec_opt.workers, "Worker threads (0 = all cores)");
    std::uint64_t unused_seed = 0;
    recognize->add_option("--seed", unused_seed, "Accepted for symmetry; recognition is deterministic");

    BenchOptions bench_opt;
    CLI::App *bench = app.add_subcommand("bench", "Run an evaluation suite from a manifest");
    bench->add_option("-m,--manifest", bench_opt.manifest, "Suite manifest (JSON)")->required();
    bench->add_option("--out", bench_opt.out_dir, "Output directory")->capture_default_str();
    bench->add_option("--seed", bench_opt.seed, "Override the manifest seed");
    bench->add_option("--workers", bench_opt.workers, "Override the manifest worker count");
    bench->add_flag("--json-lines", bench_opt.json_lines, "Print aggregate cells as JSON lines");

    GenOptions gen_opt;
    CLI::App *gen = app.add_subcommand("gen", "Materialize problem bundles");
    gen->add_option("-m,--manifest", gen_opt.manifest, "Suite manifest (JSON)");
    gen->add_option("--family", gen_opt.family, "blocks, grid, logistics, chain or corridor");
    gen->add_option("--count", gen_opt.count, "Problems to generate")->capture_default_str();
    gen->add_option("--seed", gen_opt.seed, "Random seed")->capture_default_str();
    gen->add_option("--out", gen_opt.out_dir, "Output directory")->capture_default_str();
    gen->add_option("--levels", gen_opt.levels, "Observability percentages");
    gen->add_option("--noise", gen_opt.noise, "Spurious observation counts");
    gen->add_option("--suboptimal", gen_opt.suboptimal, "none, all or half");

    PlanOptions plan_opt;
    CLI::App *plan = app.add_subcommand("plan", "Optimal plan for one goal (brute force)");
    plan_opt.input.add_to(plan);
    plan->add_option("--hyp", plan_opt.hyp, "Hypothesis index (default: hidden goal)");
    plan->add_option("--goal", plan_opt.goal, "Goal fluents, comma separated");
    plan->add_flag("--validate-obs", plan_opt.validate_obs,
                   "Check whether the observations form a plan for the goal");

    HeuristicOptions heur_opt;
    CLI::App *heuristic = app.add_subcommand("heuristic", "LP heuristic values for one goal");
    heur_opt.input.add_to(heuristic);
    heuristic->add_option("--hyp", heur_opt.hyp, "Hypothesis index (default: hidden goal)");
    heuristic->add_option("--goal", heur_opt.goal, "Goal fluents, comma separated");
    heuristic->add_option("--constraints", heur_opt.families, "Constraint families (lm,nc,ph)")
        ->capture_default_str();
    heuristic->add_option("--backend", heur_opt.backend, "LP backend")->capture_default_str();
    heuristic->add_flag("--dump-constraints", heur_opt.dump_constraints, "Print the constraints");
    heuristic->add_option("--dump-lp", heur_opt.dump_lp, "Write the LPs to this directory");
    heuristic->add_flag("--json-lines", heur_opt.json_lines, "Emit one JSON document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (*recognize)
            return cmd_recognize(rec_opt, out, err);
        if (*bench)
            return cmd_bench(bench_opt, out, err);
        if (*gen)
            return cmd_gen(gen_opt, out, err);
        if (*plan)
            return cmd_plan(plan_opt, out, err);
        if (*heuristic)
            return cmd_heuristic(heur_opt, out, err);
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const GroundingError &e) {
        err << "grounding error: " << e.what() << "\n";
        return kExitParse;
    } catch (const SolverError &e) {
        err << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const BackendUnavailable &e) {
        err << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv;
    for (const std::string &arg : args)
        argv.push_back(arg.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace goalrec::cli
