#include "goalrec/bench/domains.h"

#include "goalrec/bench/problems.h"
#include "goalrec/bench/rng.h"
#include "goalrec/oracle/search.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace goalrec::bench {

namespace {

const char *kBlocksDomain = R"((define (domain blocks)
  (:requirements :strips :typing)
  (:types block)
  (:predicates (on ?x ?y - block) (ontable ?x - block) (clear ?x - block)
               (handempty) (holding ?x - block))

  (:action pick-up
    :parameters (?x - block)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (holding ?x) (not (ontable ?x)) (not (clear ?x)) (not (handempty))))

  (:action put-down
    :parameters (?x - block)
    :precondition (holding ?x)
    :effect (and (ontable ?x) (clear ?x) (handempty) (not (holding ?x))))

  (:action stack
    :parameters (?x ?y - block)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (on ?x ?y) (clear ?x) (handempty) (not (holding ?x)) (not (clear ?y))))

  (:action unstack
    :parameters (?x ?y - block)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y) (not (on ?x ?y)) (not (clear ?x)) (not (handempty)))))
)";

const char *kGridDomain = R"((define (domain grid-nav)
  (:requirements :strips :typing)
  (:types cell)
  (:predicates (at ?c - cell) (adj ?from ?to - cell))

  (:action move
    :parameters (?from ?to - cell)
    :precondition (and (at ?from) (adj ?from ?to))
    :effect (and (at ?to) (not (at ?from)))))
)";

const char *kLogisticsDomain = R"((define (domain delivery)
  (:requirements :strips :typing)
  (:types truck package location)
  (:predicates (truck-at ?t - truck ?l - location) (pkg-at ?p - package ?l - location)
               (in ?p - package ?t - truck) (road ?from ?to - location))

  (:action drive
    :parameters (?t - truck ?from ?to - location)
    :precondition (and (truck-at ?t ?from) (road ?from ?to))
    :effect (and (truck-at ?t ?to) (not (truck-at ?t ?from))))

  (:action load
    :parameters (?p - package ?t - truck ?l - location)
    :precondition (and (truck-at ?t ?l) (pkg-at ?p ?l))
    :effect (and (in ?p ?t) (not (pkg-at ?p ?l))))

  (:action unload
    :parameters (?p - package ?t - truck ?l - location)
    :precondition (and (truck-at ?t ?l) (in ?p ?t))
    :effect (and (pkg-at ?p ?l) (not (in ?p ?t)))))
)";

const char *kChainDomain = R"((define (domain stage-tree)
  (:requirements :strips :typing)
  (:types stage)
  (:predicates (reached ?s - stage) (next ?from ?to - stage))

  (:action advance
    :parameters (?from ?to - stage)
    :precondition (and (reached ?from) (next ?from ?to))
    :effect (reached ?to)))
)";

std::string join_lines(const std::vector<std::string> &lines, const std::string &indent) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += indent + lines[i];
        if (i + 1 < lines.size())
            out += "\n";
    }
    return out;
}

std::string make_problem(const std::string &name, const std::string &domain,
                         const std::vector<std::pair<std::vector<std::string>, std::string>> &objects,
                         const std::vector<std::string> &init, const std::string &goal) {
    std::string text = "(define (problem " + name + ")\n  (:domain " + domain + ")\n  (:objects";
    for (const auto &[names, type] : objects) {
        text += "\n    ";
        for (const std::string &n : names)
            text += n + " ";
        text += "- " + type;
    }
    text += ")\n  (:init\n" + join_lines(init, "    ") + ")\n";
    text += "  (:goal (and " + goal + ")))\n";
    return text;
}

// Hypotheses are written one per line as comma-separated fluents.
std::string hyp_line(const std::vector<std::string> &atoms) {
    std::string line;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i)
            line += ",";
        line += atoms[i];
    }
    return line;
}

std::string goal_conjunction(const std::vector<std::string> &atoms) {
    std::string text;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i)
            text += " ";
        text += atoms[i];
    }
    return text;
}

std::string padded(std::uint64_t value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width)
        s = "0" + s;
    return s;
}

struct Draft {
    std::string domain_name;
    std::string domain_text;
    std::vector<std::pair<std::vector<std::string>, std::string>> objects;
    std::vector<std::string> init;
    std::vector<std::vector<std::string>> hyps;
    std::size_t hidden = 0;
};

model::BundleText to_bundle(const Draft &draft, const std::string &name) {
    model::BundleText text;
    text.domain = draft.domain_text;
    text.problem = make_problem(name, draft.domain_name, draft.objects, draft.init,
                                goal_conjunction(draft.hyps[draft.hidden]));
    for (const auto &h : draft.hyps)
        text.hyps += hyp_line(h) + "\n";
    text.real_hyp = hyp_line(draft.hyps[draft.hidden]) + "\n";
    return text;
}

// Random stacking of `blocks` into towers; returns (on/ontable/clear atoms,
// on atoms only).
std::pair<std::vector<std::string>, std::vector<std::string>>
random_towers(const std::vector<std::string> &blocks, Rng &rng) {
    std::vector<std::string> order = blocks;
    rng.shuffle(order);
    std::vector<std::vector<std::string>> towers;
    for (const std::string &b : order) {
        if (towers.empty() || rng.below(3) == 0)
            towers.push_back({b});
        else
            towers[rng.below(towers.size())].push_back(b);
    }
    std::vector<std::string> state;
    std::vector<std::string> on;
    for (const auto &tower : towers) {
        state.push_back("(ontable " + tower.front() + ")");
        for (std::size_t i = 1; i < tower.size(); ++i) {
            std::string atom = "(on " + tower[i] + " " + tower[i - 1] + ")";
            state.push_back(atom);
            on.push_back(atom);
        }
        state.push_back("(clear " + tower.back() + ")");
    }
    std::sort(state.begin(), state.end());
    std::sort(on.begin(), on.end());
    return {state, on};
}

Draft blocks_draft(Rng &rng) {
    Draft d;
    d.domain_name = "blocks";
    d.domain_text = kBlocksDomain;
    std::size_t n = static_cast<std::size_t>(rng.range(4, 5));
    std::vector<std::string> blocks;
    for (std::size_t i = 0; i < n; ++i)
        blocks.push_back("b" + std::to_string(i + 1));
    d.objects.push_back({blocks, "block"});
    auto [init, init_on] = random_towers(blocks, rng);
    d.init = init;
    d.init.push_back("(handempty)");
    std::set<std::string> init_set(init_on.begin(), init_on.end());
    std::size_t want = static_cast<std::size_t>(rng.range(3, 4));
    std::set<std::vector<std::string>> seen;
    for (int attempt = 0; attempt < 200 && d.hyps.size() < want; ++attempt) {
        auto [state, on] = random_towers(blocks, rng);
        (void)state;
        if (on.size() < 2)
            continue;
        rng.shuffle(on);
        on.resize(std::min<std::size_t>(on.size(), static_cast<std::size_t>(rng.range(2, 3))));
        std::sort(on.begin(), on.end());
        bool satisfied = std::all_of(on.begin(), on.end(),
                                     [&](const std::string &a) { return init_set.count(a); });
        if (satisfied || !seen.insert(on).second)
            continue;
        d.hyps.push_back(on);
    }
    return d;
}

Draft grid_draft(Rng &rng) {
    Draft d;
    d.domain_name = "grid-nav";
    d.domain_text = kGridDomain;
    const int width = rng.range(4, 5);
    const int height = rng.range(4, 5);
    auto cell = [](int x, int y) { return "c" + std::to_string(x) + "-" + std::to_string(y); };
    std::set<std::pair<int, int>> walls;
    int wall_count = (width * height) / 6;
    while (static_cast<int>(walls.size()) < wall_count)
        walls.insert({rng.range(0, width - 1), rng.range(0, height - 1)});
    std::vector<std::pair<int, int>> free;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (!walls.count({x, y}))
                free.push_back({x, y});
    std::vector<std::string> names;
    for (auto [x, y] : free)
        names.push_back(cell(x, y));
    d.objects.push_back({names, "cell"});
    std::vector<std::pair<int, int>> picks = free;
    rng.shuffle(picks);
    auto start = picks[0];
    d.init.push_back("(at " + cell(start.first, start.second) + ")");
    const int dx[] = {1, -1, 0, 0};
    const int dy[] = {0, 0, 1, -1};
    for (auto [x, y] : free) {
        for (int k = 0; k < 4; ++k) {
            std::pair<int, int> n{x + dx[k], y + dy[k]};
            if (n.first < 0 || n.first >= width || n.second < 0 || n.second >= height ||
                walls.count(n))
                continue;
            d.init.push_back("(adj " + cell(x, y) + " " + cell(n.first, n.second) + ")");
        }
    }
    std::size_t want = static_cast<std::size_t>(rng.range(3, 4));
    for (std::size_t i = 1; i < picks.size() && d.hyps.size() < want; ++i) {
        auto [x, y] = picks[i];
        if (std::abs(x - start.first) + std::abs(y - start.second) < 2)
            continue;
        d.hyps.push_back({"(at " + cell(x, y) + ")"});
    }
    return d;
}

Draft logistics_draft(Rng &rng) {
    Draft d;
    d.domain_name = "delivery";
    d.domain_text = kLogisticsDomain;
    const int num_locations = rng.range(3, 4);
    const int num_packages = rng.range(2, 3);
    std::vector<std::string> locations, packages;
    for (int i = 0; i < num_locations; ++i)
        locations.push_back("l" + std::to_string(i + 1));
    for (int i = 0; i < num_packages; ++i)
        packages.push_back("p" + std::to_string(i + 1));
    d.objects.push_back({{"t1"}, "truck"});
    d.objects.push_back({packages, "package"});
    d.objects.push_back({locations, "location"});
    // Random spanning tree plus one extra road, all two-way.
    std::set<std::pair<int, int>> roads;
    for (int i = 1; i < num_locations; ++i) {
        int j = rng.range(0, i - 1);
        roads.insert({i, j});
        roads.insert({j, i});
    }
    int a = rng.range(0, num_locations - 1);
    int b = rng.range(0, num_locations - 1);
    if (a != b) {
        roads.insert({a, b});
        roads.insert({b, a});
    }
    for (auto [x, y] : roads)
        d.init.push_back("(road " + locations[x] + " " + locations[y] + ")");
    d.init.push_back("(truck-at t1 " + locations[rng.below(locations.size())] + ")");
    std::vector<std::size_t> origin;
    for (const std::string &p : packages) {
        origin.push_back(rng.below(locations.size()));
        d.init.push_back("(pkg-at " + p + " " + locations[origin.back()] + ")");
    }
    std::size_t want = static_cast<std::size_t>(rng.range(3, 4));
    std::set<std::vector<std::string>> seen;
    for (int attempt = 0; attempt < 200 && d.hyps.size() < want; ++attempt) {
        std::vector<std::string> goal;
        std::vector<std::size_t> chosen(packages.size());
        for (std::size_t i = 0; i < chosen.size(); ++i)
            chosen[i] = i;
        rng.shuffle(chosen);
        chosen.resize(static_cast<std::size_t>(rng.range(1, std::min(2, num_packages))));
        bool moved = false;
        for (std::size_t p : chosen) {
            std::size_t to = rng.below(locations.size());
            moved = moved || to != origin[p];
            goal.push_back("(pkg-at " + packages[p] + " " + locations[to] + ")");
        }
        std::sort(goal.begin(), goal.end());
        if (!moved || !seen.insert(goal).second)
            continue;
        d.hyps.push_back(goal);
    }
    return d;
}

Draft chain_draft(Rng &rng) {
    Draft d;
    d.domain_name = "stage-tree";
    d.domain_text = kChainDomain;
    const int size = rng.range(9, 13);
    std::vector<std::string> stages;
    for (int i = 0; i < size; ++i)
        stages.push_back("s" + std::to_string(i));
    d.objects.push_back({stages, "stage"});
    std::vector<int> parent(size, -1);
    std::vector<int> depth(size, 0);
    std::vector<int> children(size, 0);
    for (int i = 1; i < size; ++i) {
        // Bias towards recent stages so branches grow into chains.
        int lo = std::max(0, i - 3);
        parent[i] = rng.range(lo, i - 1);
        depth[i] = depth[parent[i]] + 1;
        ++children[parent[i]];
        d.init.push_back("(next " + stages[parent[i]] + " " + stages[i] + ")");
    }
    d.init.push_back("(reached s0)");
    std::vector<int> leaves;
    for (int i = 1; i < size; ++i)
        if (children[i] == 0 || depth[i] >= 3)
            leaves.push_back(i);
    rng.shuffle(leaves);
    std::size_t want = static_cast<std::size_t>(rng.range(3, 4));
    for (int leaf : leaves) {
        if (d.hyps.size() >= want)
            break;
        if (depth[leaf] < 2)
            continue;
        d.hyps.push_back({"(reached " + stages[leaf] + ")"});
    }
    return d;
}

}  // namespace

const std::vector<std::string> &generator_families() {
    static const std::vector<std::string> families{"blocks", "grid", "logistics", "chain", "corridor"};
    return families;
}

std::vector<std::string> corridor_plan() {
    return {"(move-up cx0y1 cx0y2)",    "(move-up cx0y2 cx0y3)",    "(move-right cx0y3 cx1y3)",
            "(move-right cx1y3 cx2y3)", "(move-right cx2y3 cx3y3)", "(move-down cx3y3 cx3y2)",
            "(move-down cx3y2 cx3y1)"};
}

GeneratedBundle corridor_bundle() {
    const std::set<std::pair<int, int>> walls{{1, 2}, {2, 2}};
    std::vector<std::pair<int, int>> cells;
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            if (!walls.count({x, y}))
                cells.push_back({x, y});
    auto name = [](std::pair<int, int> c) {
        return "cx" + std::to_string(c.first) + "y" + std::to_string(c.second);
    };
    const std::vector<std::pair<std::string, std::pair<int, int>>> dirs{
        {"up", {0, 1}}, {"down", {0, -1}}, {"left", {-1, 0}}, {"right", {1, 0}}};

    std::string domain = "(define (domain grid-walk)\n"
                         "  (:requirements :strips :typing)\n"
                         "  (:types cell)\n"
                         "  (:predicates (at ?c - cell)\n"
                         "               (up ?from ?to - cell) (down ?from ?to - cell)\n"
                         "               (left ?from ?to - cell) (right ?from ?to - cell))\n";
    for (const auto &[d, delta] : dirs) {
        (void)delta;
        domain += "\n  (:action move-" + d + "\n"
                  "    :parameters (?from ?to - cell)\n"
                  "    :precondition (and (at ?from) (" + d + " ?from ?to))\n"
                  "    :effect (and (at ?to) (not (at ?from))))\n";
    }
    domain += ")\n";

    std::string problem = "(define (problem grid-walk-corridor)\n  (:domain grid-walk)\n  (:objects";
    for (auto c : cells)
        problem += " " + name(c);
    problem += " - cell)\n  (:init\n    (at cx0y1)";
    for (const auto &[d, delta] : dirs) {
        for (auto c : cells) {
            std::pair<int, int> n{c.first + delta.first, c.second + delta.second};
            if (std::find(cells.begin(), cells.end(), n) == cells.end())
                continue;
            // The top corridor is one-way (eastward).
            if (d == "left" && c.second == 3)
                continue;
            problem += "\n    (" + d + " " + name(c) + " " + name(n) + ")";
        }
    }
    problem += ")\n  (:goal (and (at cx3y1))))\n";

    GeneratedBundle bundle;
    bundle.family = "corridor";
    bundle.name = "corridor";
    bundle.text.domain = domain;
    bundle.text.problem = problem;
    bundle.text.hyps = "(at cx3y1)\n(at cx2y0)\n";
    bundle.text.real_hyp = "(at cx3y1)\n";
    std::string obs;
    for (const std::string &step : corridor_plan())
        obs += step + "\n";
    bundle.text.obs = obs;
    return bundle;
}

GeneratedBundle generate_bundle(std::string_view family, std::uint64_t seed) {
    if (family == "corridor")
        return corridor_bundle();
    Draft (*make)(Rng &) = nullptr;
    if (family == "blocks")
        make = blocks_draft;
    else if (family == "grid")
        make = grid_draft;
    else if (family == "logistics")
        make = logistics_draft;
    else if (family == "chain")
        make = chain_draft;
    else
        throw std::invalid_argument("unknown generator family '" + std::string(family) + "'");

    Rng rng(derive_seed(seed, {}, family));
    const std::string name = std::string(family) + "-" + padded(seed % 100000, 5);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Draft draft = make(rng);
        if (draft.hyps.size() < 2)
            continue;
        draft.hidden = rng.below(draft.hyps.size());
        GeneratedBundle bundle{std::string(family), name, to_bundle(draft, name)};
        model::LoadedBundle loaded = model::load_bundle(bundle.text);
        const auto &rec = loaded.recognition;
        oracle::SearchResult plan = oracle::optimal_cost(*rec.task, rec.hyps.goals[draft.hidden]);
        if (!plan.solved() || plan.plan.steps.size() < 2)
            continue;
        // Leave room for injected noise on top of the hidden plan.
        if (spurious_candidates(*rec.task, plan.plan.steps).size() < kMinSpuriousActions)
            continue;
        return bundle;
    }
    throw std::runtime_error("generator '" + std::string(family) +
                             "' failed to produce a solvable problem");
}

}  // namespace goalrec::bench
