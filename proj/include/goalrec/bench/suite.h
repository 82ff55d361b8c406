#pragma once

#include "goalrec/bench/problems.h"
#include "goalrec/constraints/generators.h"
#include "goalrec/recognition/recognizer.h"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace goalrec::bench {

inline const std::vector<double> kDefaultLevels{10, 30, 50, 70, 100};
inline const std::vector<double> kDefaultNoisyLevels{25, 50, 75, 100};
inline constexpr std::size_t kDefaultNoiseCount = 2;

enum class SuboptimalMode { None, All, Half };

struct BundleSource {
    std::filesystem::path path;
    // Label for the domain column; defaults to the PDDL domain name.
    std::string domain;
};

struct GeneratorSource {
    std::string family;
    std::size_t count = 1;
};

struct SuiteSpec {
    std::vector<BundleSource> bundles;
    std::vector<GeneratorSource> generators;
    std::vector<double> levels = kDefaultLevels;
    std::vector<std::size_t> noise{0};
    std::uint64_t seed = 1;
    std::vector<recognition::Method> methods{
        recognition::Method::HC, recognition::Method::HC_U, recognition::Method::DELTA,
        recognition::Method::DELTA_U};
    constraints::FamilySelection families;
    std::string backend = lp::kDefaultBackend;
    SuboptimalMode suboptimal = SuboptimalMode::None;
    unsigned workers = 0;
    std::size_t oracle_cap = oracle::kDefaultExpansionCap;

    // Throws std::invalid_argument when a level is outside (0, 100] or no
    // method / problem source is configured.
    void validate() const;
};

// JSON manifest. Relative bundle paths resolve against `base_dir`.
SuiteSpec parse_manifest(const std::string &text, const std::filesystem::path &base_dir = {});
SuiteSpec read_manifest(const std::filesystem::path &path);
std::string manifest_to_json(const SuiteSpec &spec);

// One bundle of the suite, in manifest order.
struct SuiteItem {
    std::string domain;
    std::string problem_id;
    model::BundleText text;
    bool suboptimal = false;
};

std::vector<SuiteItem> expand_items(const SuiteSpec &spec);

struct SuiteRow {
    std::string domain;
    std::string problem_id;
    double pct = 0;
    std::size_t noise = 0;
    recognition::Method method = recognition::Method::DELTA_U;
    double time_s = 0;
    bool correct = false;
    std::size_t spread = 0;
    std::optional<double> uncertainty;
    std::vector<std::size_t> selected;
    std::string status = "ok";
    std::size_t obs_length = 0;
};

struct AggregateCell {
    std::string domain;
    double pct = 0;
    std::size_t noise = 0;
    recognition::Method method = recognition::Method::DELTA_U;
    std::size_t problems = 0;
    std::size_t failures = 0;
    double time_mean = 0;
    // Fraction of problems (failures included) whose selection holds the
    // hidden goal.
    double accuracy = 0;
    // Mean |selected| over problems that completed.
    double spread_mean = 0;
    double obs_mean = 0;
};

struct SuiteResult {
    std::vector<SuiteRow> rows;
    std::vector<AggregateCell> aggregate;
};

SuiteResult run_suite(const SuiteSpec &spec);
std::vector<AggregateCell> aggregate_rows(const std::vector<SuiteRow> &rows);

// Rows without wall-clock times, so reruns compare byte for byte.
std::string rows_csv(const SuiteResult &result);
std::string timings_csv(const SuiteResult &result);
std::string aggregate_csv(const SuiteResult &result);
std::string format_aggregate_table(const SuiteResult &result);
// rows.csv, timings.csv and aggregate.csv.
void write_suite_outputs(const SuiteResult &result, const std::filesystem::path &dir);

}  // namespace goalrec::bench
