#pragma once

#include "goalrec/model/grounding.h"
#include "goalrec/model/observations.h"
#include "goalrec/model/pddl.h"
#include "goalrec/model/task.h"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace goalrec::model {

// Raw text of a problem bundle directory:
//   domain.pddl, template.pddl, hyps.dat, obs.dat, real_hyp.dat
struct BundleText {
    std::string domain;
    std::string problem;
    std::string hyps;
    std::optional<std::string> obs;
    std::optional<std::string> real_hyp;
};

// Domain, initial state, hypotheses, observations and optional hidden goal.
struct RecognitionProblem {
    std::shared_ptr<const PlanningTask> task;
    GoalHypotheses hyps;
    ObservationSequence obs;

    std::optional<std::size_t> hidden() const { return hyps.hidden; }
};

struct LoadedBundle {
    DomainDef domain;
    ProblemDef problem;
    RecognitionProblem recognition;
};

// Parses and grounds a bundle. Hypothesis fluents are registered as facts
// even when no action touches them. Throws ParseError / GroundingError.
LoadedBundle load_bundle(const BundleText &text, const GroundingOptions &options = {});

// Missing optional files (obs.dat, real_hyp.dat) are left empty; a missing
// required file raises ParseError naming it.
BundleText read_bundle_dir(const std::filesystem::path &dir);
void write_bundle_dir(const std::filesystem::path &dir, const BundleText &text);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &content);

}  // namespace goalrec::model
