#include "goalrec/bench/domains.h"
#include "goalrec/bench/suite.h"
#include "goalrec/lp/backend.h"
#include "goalrec/model/bundle.h"
#include "goalrec/oracle/search.h"
#include "goalrec/recognition/recognizer.h"
#include "goalrec/recognition/report_io.h"
#include "goalrec/util/errors.h"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace goalrec;

namespace {

py::object json_loads(const std::string &text) {
    return py::module_::import("json").attr("loads")(text);
}

recognition::RecognitionConfig make_config(const std::string &constraints,
                                           const std::string &backend, unsigned workers) {
    recognition::RecognitionConfig config;
    config.families = constraints::FamilySelection::parse(constraints);
    config.backend = backend;
    config.workers = workers;
    return config;
}

model::ObservationSequence observations_for(const model::RecognitionProblem &problem,
                                            const std::optional<std::vector<std::string>> &obs) {
    if (!obs)
        return problem.obs;
    std::string text;
    for (const std::string &line : *obs)
        text += line + "\n";
    return model::parse_observations(text, *problem.task);
}

std::size_t goal_index(const model::RecognitionProblem &problem, std::size_t index) {
    if (index >= problem.hyps.goals.size())
        throw py::index_error("hypothesis index out of range");
    return index;
}

py::dict bundle_dict(const model::BundleText &text) {
    py::dict d;
    d["domain"] = text.domain;
    d["problem"] = text.problem;
    d["hyps"] = text.hyps;
    d["obs"] = text.obs;
    d["real_hyp"] = text.real_hyp;
    return d;
}

}  // namespace

PYBIND11_MODULE(_goalrec, m) {
    m.doc() = "Goal recognition with operator-counting heuristics";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<GroundingError>(m, "GroundingError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<model::RecognitionProblem>(m, "Problem")
        .def_property_readonly("num_facts",
                               [](const model::RecognitionProblem &p) { return p.task->num_facts(); })
        .def_property_readonly("num_actions",
                               [](const model::RecognitionProblem &p) { return p.task->num_actions(); })
        .def_property_readonly("hypotheses",
                               [](const model::RecognitionProblem &p) { return p.hyps.labels; })
        .def_property_readonly("hidden", &model::RecognitionProblem::hidden)
        .def_property_readonly("observations",
                               [](const model::RecognitionProblem &p) {
                                   std::vector<std::string> names;
                                   for (model::ActionId a : p.obs.actions())
                                       names.push_back(p.task->action(a).name);
                                   return names;
                               })
        .def_property_readonly("action_names", [](const model::RecognitionProblem &p) {
            std::vector<std::string> names;
            for (const model::GroundAction &a : p.task->actions())
                names.push_back(a.name);
            return names;
        });

    m.def("load", [](const std::filesystem::path &dir) {
        return model::load_bundle(model::read_bundle_dir(dir)).recognition;
    }, py::arg("bundle_dir"), "Load a bundle directory.");

    m.def("load_text",
          [](std::string domain, std::string problem, std::string hyps,
             std::optional<std::string> obs, std::optional<std::string> real_hyp, bool prune) {
              model::GroundingOptions options;
              options.prune_unreachable = prune;
              model::BundleText text{std::move(domain), std::move(problem), std::move(hyps),
                                     std::move(obs), std::move(real_hyp)};
              return model::load_bundle(text, options).recognition;
          },
          py::arg("domain"), py::arg("problem"), py::arg("hyps"), py::arg("obs") = py::none(),
          py::arg("real_hyp") = py::none(), py::arg("prune") = true);

    m.def("recognize",
          [](const model::RecognitionProblem &problem, const std::string &method,
             std::optional<std::vector<std::string>> obs, const std::string &constraints,
             const std::string &backend, unsigned workers) {
              auto report = recognition::recognize(
                  *problem.task, problem.hyps, observations_for(problem, obs),
                  recognition::parse_method(method), make_config(constraints, backend, workers));
              return json_loads(recognition::report_to_json(report));
          },
          py::arg("problem"), py::arg("method") = "delta-u", py::arg("obs") = py::none(),
          py::arg("constraints") = "lm,nc,ph", py::arg("backend") = lp::kDefaultBackend,
          py::arg("workers") = 1, "Recognize and return the report as a dict.");

    m.def("score",
          [](const model::RecognitionProblem &problem, std::size_t index,
             std::optional<std::vector<std::string>> obs, const std::string &constraints,
             const std::string &backend) {
              auto s = recognition::score_hypothesis(
                  *problem.task, problem.hyps.goals[goal_index(problem, index)],
                  observations_for(problem, obs), make_config(constraints, backend, 1), index);
              py::dict d;
              d["h"] = s.h;
              d["h_hc"] = s.h_hc;
              d["delta"] = s.delta;
              return d;
          },
          py::arg("problem"), py::arg("index"), py::arg("obs") = py::none(),
          py::arg("constraints") = "lm,nc,ph", py::arg("backend") = lp::kDefaultBackend);

    m.def("solve_lp",
          [](std::vector<double> objective,
             std::vector<std::pair<std::vector<std::pair<int, double>>, double>> rows,
             const std::string &backend) {
              lp::LinearProgram program;
              program.num_vars = objective.size();
              program.objective = std::move(objective);
              for (auto &[terms, rhs] : rows) {
                  lp::LinearConstraint row;
                  row.terms = std::move(terms);
                  row.rhs = rhs;
                  program.constraints.push_back(std::move(row));
              }
              lp::LpOutcome outcome = lp::backend_port(program, backend);
              py::dict d;
              d["status"] = std::string(lp::to_string(outcome.status));
              d["value"] = outcome.value;
              d["counts"] = outcome.counts;
              return d;
          },
          py::arg("objective"), py::arg("rows"), py::arg("backend") = lp::kDefaultBackend,
          "Minimize objective . y subject to sum(coef * y[var]) >= rhs per row and y >= 0.");

    m.def("optimal_cost",
          [](const model::RecognitionProblem &problem, std::size_t index) -> std::optional<long long> {
              auto result = oracle::optimal_cost(*problem.task,
                                                 problem.hyps.goals[goal_index(problem, index)]);
              if (result.status == oracle::SearchStatus::CapExceeded)
                  throw std::runtime_error("search expansion cap exceeded");
              if (!result.solved())
                  return std::nullopt;
              return result.plan.cost;
          },
          py::arg("problem"), py::arg("index"), "Optimal plan cost, None when unreachable.");

    m.def("uncertainty_ratio",
          [](std::vector<double> values, std::size_t obs_length) {
              return recognition::uncertainty_ratio(values, obs_length);
          },
          py::arg("values"), py::arg("obs_length"));

    m.def("run_suite",
          [](const std::string &manifest, const std::filesystem::path &base_dir) {
              bench::SuiteResult result = bench::run_suite(bench::parse_manifest(manifest, base_dir));
              py::dict d;
              d["rows_csv"] = bench::rows_csv(result);
              d["aggregate_csv"] = bench::aggregate_csv(result);
              d["table"] = bench::format_aggregate_table(result);
              return d;
          },
          py::arg("manifest"), py::arg("base_dir") = std::filesystem::path{},
          "Run a JSON benchmark manifest.");

    m.def("generate",
          [](const std::string &family, std::uint64_t seed) {
              bench::GeneratedBundle bundle = bench::generate_bundle(family, seed);
              py::dict d = bundle_dict(bundle.text);
              d["name"] = bundle.name;
              return d;
          },
          py::arg("family"), py::arg("seed"));

    m.def("backends", [] { return lp::BackendRegistry::global().names(); });
}
