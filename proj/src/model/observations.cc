#include "goalrec/model/observations.h"

#include "goalrec/util/errors.h"

#include <algorithm>
#include <cctype>

namespace goalrec::model {

ObservationSequence::ObservationSequence(std::vector<ActionId> obs) : obs_(std::move(obs)) {
    for (ActionId a : obs_)
        ++counts_[a];
}

namespace {

std::vector<std::string_view> nonblank_lines(std::string_view text,
                                             std::vector<int> *line_numbers) {
    std::vector<std::string_view> lines;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++number;
        std::size_t first = line.find_first_not_of(" \t\r");
        // ';' starts a comment line, as in PDDL.
        if (first != std::string_view::npos && line[first] != ';') {
            std::size_t last = line.find_last_not_of(" \t\r");
            lines.push_back(line.substr(first, last - first + 1));
            if (line_numbers)
                line_numbers->push_back(number);
        }
        if (end == text.size())
            break;
        start = end + 1;
    }
    return lines;
}

FactSet resolve_fluents(std::string_view line, int line_number, const PlanningTask &task) {
    std::vector<std::string> atoms;
    try {
        atoms = split_fluents(line);
    } catch (const ParseError &e) {
        throw ParseError(e.what(), line_number);
    }
    if (atoms.empty())
        throw ParseError("hypothesis without fluents", line_number);
    FactSet goal;
    for (const std::string &atom : atoms) {
        std::optional<FactId> id = task.find_fact(atom);
        if (!id)
            throw ParseError("unknown fluent " + atom, line_number);
        goal.push_back(*id);
    }
    return make_fact_set(std::move(goal));
}

}  // namespace

std::vector<std::string> split_fluents(std::string_view line) {
    std::vector<std::string> atoms;
    std::size_t pos = 0;
    while (pos < line.size()) {
        char c = line[pos];
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
            continue;
        }
        if (c != '(')
            throw ParseError("expected '(' in fluent list, got '" + std::string(1, c) + "'");
        std::size_t close = line.find(')', pos);
        if (close == std::string_view::npos)
            throw ParseError("unclosed fluent in '" + std::string(line) + "'");
        atoms.push_back(canonical_atom(line.substr(pos, close - pos + 1)));
        pos = close + 1;
    }
    return atoms;
}

ObservationSequence parse_observations(std::string_view text, const PlanningTask &task) {
    std::vector<int> numbers;
    std::vector<std::string_view> lines = nonblank_lines(text, &numbers);
    std::vector<ActionId> obs;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string name;
        try {
            name = canonical_atom(lines[i]);
        } catch (const ParseError &e) {
            throw ParseError(std::string("bad observation: ") + e.what(), numbers[i]);
        }
        std::optional<ActionId> id = task.find_action(name);
        if (!id)
            throw ParseError("observation " + name + " names no ground action of the task",
                             numbers[i]);
        obs.push_back(*id);
    }
    return ObservationSequence(std::move(obs));
}

GoalHypotheses parse_hypotheses(std::string_view text, const PlanningTask &task) {
    std::vector<int> numbers;
    std::vector<std::string_view> lines = nonblank_lines(text, &numbers);
    GoalHypotheses hyps;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        FactSet goal = resolve_fluents(lines[i], numbers[i], task);
        std::string label;
        for (FactId f : goal)
            label += (label.empty() ? "" : ",") + task.fact_name(f);
        hyps.goals.push_back(std::move(goal));
        hyps.labels.push_back(std::move(label));
    }
    return hyps;
}

std::size_t resolve_hidden_goal(std::string_view text, const GoalHypotheses &hyps,
                                const PlanningTask &task) {
    std::vector<int> numbers;
    std::vector<std::string_view> lines = nonblank_lines(text, &numbers);
    if (lines.size() != 1)
        throw ParseError("real hypothesis file must hold exactly one line");
    FactSet goal = resolve_fluents(lines.front(), numbers.front(), task);
    auto it = std::find(hyps.goals.begin(), hyps.goals.end(), goal);
    if (it == hyps.goals.end())
        throw ParseError("real hypothesis matches no line of the hypothesis file", numbers.front());
    return static_cast<std::size_t>(it - hyps.goals.begin());
}

std::string format_observations(const ObservationSequence &obs, const PlanningTask &task) {
    std::string out;
    for (ActionId a : obs.actions())
        out += task.action(a).name + "\n";
    return out;
}

}  // namespace goalrec::model
