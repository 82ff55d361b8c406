#include "goalrec/bench/suite.h"

#include "goalrec/bench/domains.h"
#include "goalrec/util/errors.h"
#include "goalrec/util/parallel.h"
#include "goalrec/util/timer.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace goalrec::bench {

using json = nlohmann::json;

namespace {

std::string format_number(double value, const char *pattern = "%g") {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), pattern, value);
    return buffer;
}

std::string suboptimal_name(SuboptimalMode mode) {
    switch (mode) {
    case SuboptimalMode::None:
        return "none";
    case SuboptimalMode::All:
        return "all";
    case SuboptimalMode::Half:
        return "half";
    }
    return "none";
}

SuboptimalMode parse_suboptimal(const json &value) {
    if (value.is_boolean())
        return value.get<bool>() ? SuboptimalMode::All : SuboptimalMode::None;
    std::string text = value.get<std::string>();
    if (text == "none")
        return SuboptimalMode::None;
    if (text == "all")
        return SuboptimalMode::All;
    if (text == "half")
        return SuboptimalMode::Half;
    throw std::invalid_argument("manifest: suboptimal must be none, all or half");
}

// Keeps CSV cells free of separators.
std::string sanitize(std::string text) {
    for (char &c : text)
        if (c == ',' || c == '\n' || c == '\r' || c == '"')
            c = ' ';
    return text;
}

std::string selected_cell(const std::vector<std::size_t> &selected) {
    std::string cell;
    for (std::size_t i = 0; i < selected.size(); ++i) {
        if (i)
            cell += ";";
        cell += std::to_string(selected[i]);
    }
    return cell;
}

std::vector<SuiteRow> failure_rows(const SuiteSpec &spec, const SuiteItem &item,
                                   const std::string &status, double pct, std::size_t noise) {
    std::vector<SuiteRow> rows;
    for (recognition::Method method : spec.methods) {
        SuiteRow row;
        row.domain = item.domain;
        row.problem_id = item.problem_id;
        row.pct = pct;
        row.noise = noise;
        row.method = method;
        row.status = status;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string status_of(const std::exception &error) {
    if (dynamic_cast<const ParseError *>(&error))
        return "parse-error";
    if (dynamic_cast<const GroundingError *>(&error))
        return "grounding-error";
    if (dynamic_cast<const SolverError *>(&error))
        return "solver-error";
    if (dynamic_cast<const GenerationError *>(&error))
        return "generation-error";
    return "error";
}

std::vector<SuiteRow> run_item(const SuiteSpec &spec, const SuiteItem &item) {
    std::vector<SuiteRow> rows;
    auto fail_all = [&](const std::string &status) {
        rows.clear();
        for (double pct : spec.levels)
            for (std::size_t noise : spec.noise) {
                auto failed = failure_rows(spec, item, status, pct, noise);
                rows.insert(rows.end(), failed.begin(), failed.end());
            }
        return rows;
    };

    Stopwatch load_clock;
    model::LoadedBundle loaded;
    try {
        loaded = model::load_bundle(item.text);
    } catch (const std::exception &error) {
        return fail_all(status_of(error));
    }
    const double parse_seconds = load_clock.seconds();
    const model::RecognitionProblem &rec = loaded.recognition;
    if (!rec.hidden())
        return fail_all("no-hidden-goal");

    WitnessPlan witness;
    try {
        PlanOptions options;
        options.suboptimal = item.suboptimal;
        options.cap = spec.oracle_cap;
        Rng plan_rng(derive_seed(spec.seed, {}, item.problem_id + "/plan"));
        witness = witness_plan(*rec.task, rec.hyps.goals[*rec.hidden()], options, plan_rng);
    } catch (const std::exception &error) {
        return fail_all(status_of(error));
    }

    recognition::RecognitionConfig config;
    config.families = spec.families;
    config.backend = spec.backend;
    config.workers = 1;
    for (double pct : spec.levels) {
        for (std::size_t noise : spec.noise) {
            Rng rng(derive_seed(spec.seed,
                                {static_cast<std::uint64_t>(std::llround(pct * 1000)), noise},
                                item.problem_id + "/obs"));
            std::vector<recognition::HypothesisScore> scores;
            model::ObservationSequence obs;
            double scoring_seconds = 0;
            try {
                obs = sample_observations(witness.plan.steps, pct, rng);
                obs = inject_noise(obs, *rec.task, witness.plan.steps, noise, rng);
                Stopwatch clock;
                scores = recognition::score_all(*rec.task, rec.hyps, obs, config);
                scoring_seconds = clock.seconds();
            } catch (const std::exception &error) {
                auto failed = failure_rows(spec, item, status_of(error), pct, noise);
                rows.insert(rows.end(), failed.begin(), failed.end());
                continue;
            }
            for (recognition::Method method : spec.methods) {
                recognition::RecognitionReport report =
                    recognition::select_goals(scores, obs.size(), method, config);
                SuiteRow row;
                row.domain = item.domain;
                row.problem_id = item.problem_id;
                row.pct = pct;
                row.noise = noise;
                row.method = method;
                row.time_s = parse_seconds + scoring_seconds + report.timings.selection;
                row.correct = report.is_selected(*rec.hidden());
                row.spread = report.selected.size();
                row.uncertainty = report.uncertainty;
                row.selected = report.selected;
                row.status = report.all_infeasible ? "all-infeasible" : "ok";
                row.obs_length = obs.size();
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

}  // namespace

void SuiteSpec::validate() const {
    if (bundles.empty() && generators.empty())
        throw std::invalid_argument("suite has no bundles and no generators");
    if (levels.empty())
        throw std::invalid_argument("suite has no observability levels");
    for (double pct : levels)
        if (!(pct > 0.0 && pct <= 100.0))
            throw std::invalid_argument("observability level " + format_number(pct) +
                                        " is outside (0, 100]");
    if (noise.empty())
        throw std::invalid_argument("suite has no noise setting");
    if (methods.empty())
        throw std::invalid_argument("suite has no methods");
    for (const GeneratorSource &g : generators) {
        const auto &families = generator_families();
        if (std::find(families.begin(), families.end(), g.family) == families.end())
            throw std::invalid_argument("unknown generator family '" + g.family + "'");
    }
}

SuiteSpec parse_manifest(const std::string &text, const std::filesystem::path &base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &error) {
        throw ParseError(std::string("manifest: ") + error.what());
    }
    if (!doc.is_object())
        throw ParseError("manifest: top level must be an object");
    SuiteSpec spec;
    try {
        const bool noisy = doc.value("noisy", false);
        if (noisy) {
            spec.levels = kDefaultNoisyLevels;
            spec.noise = {kDefaultNoiseCount};
        }
        if (doc.contains("levels"))
            spec.levels = doc["levels"].get<std::vector<double>>();
        if (doc.contains("noise")) {
            if (doc["noise"].is_array())
                spec.noise = doc["noise"].get<std::vector<std::size_t>>();
            else
                spec.noise = {doc["noise"].get<std::size_t>()};
        }
        spec.seed = doc.value("seed", spec.seed);
        if (doc.contains("methods")) {
            spec.methods.clear();
            for (const auto &m : doc["methods"])
                spec.methods.push_back(recognition::parse_method(m.get<std::string>()));
        }
        if (doc.contains("constraints"))
            spec.families = constraints::FamilySelection::parse(doc["constraints"].get<std::string>());
        spec.backend = doc.value("backend", spec.backend);
        if (doc.contains("suboptimal"))
            spec.suboptimal = parse_suboptimal(doc["suboptimal"]);
        spec.workers = doc.value("workers", spec.workers);
        spec.oracle_cap = doc.value("oracle_cap", spec.oracle_cap);
        for (const auto &entry : doc.value("bundles", json::array())) {
            BundleSource source;
            if (entry.is_string()) {
                source.path = entry.get<std::string>();
            } else {
                source.path = entry.at("path").get<std::string>();
                source.domain = entry.value("domain", std::string());
            }
            if (source.path.is_relative() && !base_dir.empty())
                source.path = base_dir / source.path;
            spec.bundles.push_back(std::move(source));
        }
        for (const auto &entry : doc.value("generate", json::array())) {
            GeneratorSource source;
            source.family = entry.at("family").get<std::string>();
            source.count = entry.value("count", source.count);
            spec.generators.push_back(std::move(source));
        }
    } catch (const json::exception &error) {
        throw ParseError(std::string("manifest: ") + error.what());
    }
    spec.validate();
    return spec;
}

SuiteSpec read_manifest(const std::filesystem::path &path) {
    return parse_manifest(model::read_text_file(path), path.parent_path());
}

std::string manifest_to_json(const SuiteSpec &spec) {
    json doc;
    doc["seed"] = spec.seed;
    doc["levels"] = spec.levels;
    doc["noise"] = spec.noise;
    json methods = json::array();
    for (recognition::Method m : spec.methods)
        methods.push_back(std::string(recognition::to_string(m)));
    doc["methods"] = methods;
    doc["constraints"] = spec.families.to_string();
    doc["backend"] = spec.backend;
    doc["suboptimal"] = suboptimal_name(spec.suboptimal);
    doc["workers"] = spec.workers;
    json bundles = json::array();
    for (const BundleSource &b : spec.bundles) {
        json entry{{"path", b.path.generic_string()}};
        if (!b.domain.empty())
            entry["domain"] = b.domain;
        bundles.push_back(entry);
    }
    doc["bundles"] = bundles;
    json generate = json::array();
    for (const GeneratorSource &g : spec.generators)
        generate.push_back({{"family", g.family}, {"count", g.count}});
    doc["generate"] = generate;
    return doc.dump(2) + "\n";
}

std::vector<SuiteItem> expand_items(const SuiteSpec &spec) {
    std::vector<SuiteItem> items;
    for (const BundleSource &source : spec.bundles) {
        SuiteItem item;
        item.text = model::read_bundle_dir(source.path);
        item.problem_id = source.path.filename().string();
        if (item.problem_id.empty())
            item.problem_id = source.path.parent_path().filename().string();
        item.domain = source.domain;
        if (item.domain.empty())
            item.domain = model::parse_domain(item.text.domain).name;
        items.push_back(std::move(item));
    }
    for (const GeneratorSource &source : spec.generators) {
        for (std::size_t k = 0; k < source.count; ++k) {
            GeneratedBundle bundle = generate_bundle(source.family,
                                                     derive_seed(spec.seed, {k}, source.family));
            SuiteItem item;
            item.domain = source.family;
            item.problem_id = source.family + "-" + std::to_string(k);
            item.text = std::move(bundle.text);
            items.push_back(std::move(item));
        }
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        items[i].suboptimal = spec.suboptimal == SuboptimalMode::All ||
                              (spec.suboptimal == SuboptimalMode::Half && i % 2 == 1);
    }
    return items;
}

std::vector<AggregateCell> aggregate_rows(const std::vector<SuiteRow> &rows) {
    using Key = std::tuple<std::string, double, std::size_t, int>;
    std::map<Key, AggregateCell> cells;
    std::map<Key, std::size_t> completed;
    auto add = [&](const std::string &domain, const SuiteRow &row) {
        Key key{domain, row.pct, row.noise, static_cast<int>(row.method)};
        AggregateCell &cell = cells[key];
        cell.domain = domain;
        cell.pct = row.pct;
        cell.noise = row.noise;
        cell.method = row.method;
        ++cell.problems;
        cell.time_mean += row.time_s;
        cell.accuracy += row.correct ? 1.0 : 0.0;
        if (row.status == "ok") {
            ++completed[key];
            cell.spread_mean += static_cast<double>(row.spread);
            cell.obs_mean += static_cast<double>(row.obs_length);
        } else if (row.status != "all-infeasible") {
            ++cell.failures;
        }
    };
    for (const SuiteRow &row : rows) {
        add(row.domain, row);
        add("all", row);
    }
    std::vector<AggregateCell> result;
    // Per-domain cells first (sorted), then the "all" summary.
    for (int pass = 0; pass < 2; ++pass) {
        for (auto &[key, cell] : cells) {
            if ((std::get<0>(key) == "all") != (pass == 1))
                continue;
            double n = static_cast<double>(cell.problems);
            cell.time_mean /= n;
            cell.accuracy /= n;
            std::size_t done = completed[key];
            cell.spread_mean = done ? cell.spread_mean / static_cast<double>(done) : 0.0;
            cell.obs_mean = done ? cell.obs_mean / static_cast<double>(done) : 0.0;
            result.push_back(cell);
        }
    }
    return result;
}

SuiteResult run_suite(const SuiteSpec &spec) {
    spec.validate();
    std::vector<SuiteItem> items = expand_items(spec);
    std::vector<std::vector<SuiteRow>> per_item(items.size());
    parallel_for(items.size(), spec.workers,
                 [&](std::size_t i) { per_item[i] = run_item(spec, items[i]); });
    SuiteResult result;
    for (auto &rows : per_item)
        for (SuiteRow &row : rows)
            result.rows.push_back(std::move(row));
    result.aggregate = aggregate_rows(result.rows);
    return result;
}

std::string rows_csv(const SuiteResult &result) {
    std::ostringstream out;
    out << "domain,problem_id,pct,noise,method,correct,spread,U,selected_goals,status\n";
    for (const SuiteRow &row : result.rows) {
        out << sanitize(row.domain) << ',' << sanitize(row.problem_id) << ','
            << format_number(row.pct) << ',' << row.noise << ','
            << recognition::to_string(row.method) << ',' << (row.correct ? 1 : 0) << ','
            << row.spread << ',' << (row.uncertainty ? format_number(*row.uncertainty, "%.6f") : "")
            << ',' << selected_cell(row.selected) << ',' << sanitize(row.status) << '\n';
    }
    return out.str();
}

std::string timings_csv(const SuiteResult &result) {
    std::ostringstream out;
    out << "domain,problem_id,pct,noise,method,time_s\n";
    for (const SuiteRow &row : result.rows) {
        out << sanitize(row.domain) << ',' << sanitize(row.problem_id) << ','
            << format_number(row.pct) << ',' << row.noise << ','
            << recognition::to_string(row.method) << ',' << format_number(row.time_s, "%.6f")
            << '\n';
    }
    return out.str();
}

std::string aggregate_csv(const SuiteResult &result) {
    std::ostringstream out;
    out << "domain,pct,noise,method,problems,obs,time_s,accuracy_pct,spread,failures\n";
    for (const AggregateCell &cell : result.aggregate) {
        out << sanitize(cell.domain) << ',' << format_number(cell.pct) << ',' << cell.noise << ','
            << recognition::to_string(cell.method) << ',' << cell.problems << ','
            << format_number(cell.obs_mean, "%.2f") << ',' << format_number(cell.time_mean, "%.6f")
            << ',' << format_number(cell.accuracy * 100.0, "%.2f") << ','
            << format_number(cell.spread_mean, "%.2f") << ',' << cell.failures << '\n';
    }
    return out.str();
}

std::string format_aggregate_table(const SuiteResult &result) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-12s %6s %5s %-8s %5s %6s %9s %8s %6s\n", "domain", "obs%",
                  "noise", "method", "n", "|O|", "Time", "Acc %", "S");
    out << line;
    for (const AggregateCell &cell : result.aggregate) {
        std::snprintf(line, sizeof(line), "%-12s %6g %5zu %-8s %5zu %6.2f %9.4f %8.2f %6.2f\n",
                      cell.domain.c_str(), cell.pct, cell.noise,
                      std::string(recognition::to_string(cell.method)).c_str(), cell.problems,
                      cell.obs_mean, cell.time_mean, cell.accuracy * 100.0, cell.spread_mean);
        out << line;
    }
    return out.str();
}

void write_suite_outputs(const SuiteResult &result, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    model::write_text_file(dir / "rows.csv", rows_csv(result));
    model::write_text_file(dir / "timings.csv", timings_csv(result));
    model::write_text_file(dir / "aggregate.csv", aggregate_csv(result));
}

}  // namespace goalrec::bench
