#include "goalrec/recognition/report_io.h"

#include "goalrec/util/errors.h"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace goalrec::recognition {

using json = nlohmann::json;

namespace {

json value_to_json(double value) {
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    return value;
}

double value_from_json(const json &node) {
    if (node.is_string()) {
        std::string text = node.get<std::string>();
        if (text == "inf")
            return kInfinity;
        if (text == "-inf")
            return -kInfinity;
        throw ParseError("report: unexpected value '" + text + "'");
    }
    return node.get<double>();
}

json counts_to_json(const std::vector<double> &counts) {
    json entries = json::array();
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] != 0.0)
            entries.push_back(json::array({i, counts[i]}));
    return json{{"size", counts.size()}, {"nonzero", entries}};
}

std::vector<double> counts_from_json(const json &node) {
    std::vector<double> counts(node.at("size").get<std::size_t>(), 0.0);
    for (const json &entry : node.at("nonzero"))
        counts.at(entry.at(0).get<std::size_t>()) = entry.at(1).get<double>();
    return counts;
}

}  // namespace

std::string format_value(double value) {
    if (std::isinf(value))
        return "inf";
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

std::string report_to_json(const RecognitionReport &report) {
    json doc;
    doc["method"] = std::string(to_string(report.method));
    doc["obs_length"] = report.obs_length;
    doc["uncertainty"] = report.uncertainty ? json(*report.uncertainty) : json(nullptr);
    doc["applied_ratio"] = report.applied_ratio;
    doc["selected"] = report.selected;
    doc["all_infeasible"] = report.all_infeasible;
    doc["fallback_ranking"] = report.fallback_ranking;
    doc["timings"] = {{"parse_ground", report.timings.parse_ground},
                      {"constraints", report.timings.constraints},
                      {"lp", report.timings.lp},
                      {"selection", report.timings.selection},
                      {"scoring_wall", report.timings.scoring_wall}};
    json hyps = json::array();
    for (const HypothesisScore &s : report.scores) {
        json h;
        h["index"] = s.goal_index;
        h["goal"] = s.goal_index < report.labels.size() ? report.labels[s.goal_index] : "";
        h["h"] = value_to_json(s.h);
        h["h_hc"] = value_to_json(s.h_hc);
        h["delta"] = value_to_json(s.delta);
        h["selected"] = report.is_selected(s.goal_index);
        h["num_constraints"] = s.num_constraints;
        h["constraint_seconds"] = s.constraint_seconds;
        h["lp_seconds"] = s.lp_seconds;
        h["counts_base"] = counts_to_json(s.counts_base);
        h["counts_hc"] = counts_to_json(s.counts_hc);
        hyps.push_back(std::move(h));
    }
    doc["hypotheses"] = hyps;
    return doc.dump();
}

RecognitionReport report_from_json(const std::string &text) {
    RecognitionReport report;
    try {
        json doc = json::parse(text);
        report.method = parse_method(doc.at("method").get<std::string>());
        report.obs_length = doc.at("obs_length").get<std::size_t>();
        if (!doc.at("uncertainty").is_null())
            report.uncertainty = doc["uncertainty"].get<double>();
        report.applied_ratio = doc.at("applied_ratio").get<double>();
        report.selected = doc.at("selected").get<std::vector<std::size_t>>();
        report.all_infeasible = doc.at("all_infeasible").get<bool>();
        report.fallback_ranking = doc.at("fallback_ranking").get<std::vector<std::size_t>>();
        const json &t = doc.at("timings");
        report.timings.parse_ground = t.at("parse_ground").get<double>();
        report.timings.constraints = t.at("constraints").get<double>();
        report.timings.lp = t.at("lp").get<double>();
        report.timings.selection = t.at("selection").get<double>();
        report.timings.scoring_wall = t.at("scoring_wall").get<double>();
        for (const json &h : doc.at("hypotheses")) {
            HypothesisScore s;
            s.goal_index = h.at("index").get<std::size_t>();
            s.h = value_from_json(h.at("h"));
            s.h_hc = value_from_json(h.at("h_hc"));
            s.delta = value_from_json(h.at("delta"));
            s.num_constraints = h.at("num_constraints").get<std::size_t>();
            s.constraint_seconds = h.at("constraint_seconds").get<double>();
            s.lp_seconds = h.at("lp_seconds").get<double>();
            s.counts_base = counts_from_json(h.at("counts_base"));
            s.counts_hc = counts_from_json(h.at("counts_hc"));
            if (report.labels.size() <= s.goal_index)
                report.labels.resize(s.goal_index + 1);
            report.labels[s.goal_index] = h.at("goal").get<std::string>();
            report.scores.push_back(std::move(s));
        }
    } catch (const json::exception &error) {
        throw ParseError(std::string("report: ") + error.what());
    } catch (const std::invalid_argument &error) {
        throw ParseError(std::string("report: ") + error.what());
    }
    return report;
}

std::string format_report(const RecognitionReport &report) {
    std::ostringstream out;
    char line[512];
    out << "method: " << to_string(report.method) << "\n";
    out << "observations: " << report.obs_length << "\n";
    out << "U: " << (report.uncertainty ? format_value(*report.uncertainty) : "undefined");
    if (report.applied_ratio != report.uncertainty.value_or(1.0))
        out << " (applied " << format_value(report.applied_ratio) << ")";
    out << "\n";
    std::snprintf(line, sizeof(line),
                  "time: parse/ground %.4fs, constraints %.4fs, lp %.4fs, selection %.4fs, "
                  "total %.4fs\n",
                  report.timings.parse_ground, report.timings.constraints, report.timings.lp,
                  report.timings.selection, report.timings.total());
    out << line;
    std::snprintf(line, sizeof(line), "  %-3s %-8s %-8s %-8s %-3s %s\n", "#", "h", "h_hc", "delta",
                  "sel", "goal");
    out << line;
    for (const HypothesisScore &s : report.scores) {
        const std::string label =
            s.goal_index < report.labels.size() ? report.labels[s.goal_index] : "";
        std::snprintf(line, sizeof(line), "  %-3zu %-8s %-8s %-8s %-3s %s\n", s.goal_index,
                      format_value(s.h).c_str(), format_value(s.h_hc).c_str(),
                      format_value(s.delta).c_str(), report.is_selected(s.goal_index) ? "*" : "",
                      label.c_str());
        out << line;
    }
    if (report.all_infeasible) {
        out << "every hypothesis is infeasible under the observations; nothing selected\n";
        out << "fallback ranking by h (diagnostic only):";
        for (std::size_t i : report.fallback_ranking)
            out << " " << i;
        out << "\n";
    }
    return out.str();
}

}  // namespace goalrec::recognition
