#include "goalrec/oracle/search.h"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace goalrec::oracle {

namespace {

using Word = std::uint64_t;

// Packed fact bitset followed by optional residual counts.
struct Key {
    std::vector<Word> words;
    std::vector<int> residual;

    bool operator==(const Key &other) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key &key) const {
        std::size_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        for (Word w : key.words)
            mix(w);
        for (int r : key.residual)
            mix(static_cast<std::uint64_t>(r));
        return h;
    }
};

class Bits {
public:
    explicit Bits(std::size_t num_facts) : num_words_((num_facts + 63) / 64) {}

    std::vector<Word> make(const model::FactSet &facts) const {
        std::vector<Word> words(num_words_, 0);
        for (model::FactId f : facts)
            words[f / 64] |= Word{1} << (f % 64);
        return words;
    }

    static bool test(const std::vector<Word> &words, model::FactId f) {
        return (words[f / 64] >> (f % 64)) & 1;
    }

    static bool contains(const std::vector<Word> &words, const model::FactSet &facts) {
        for (model::FactId f : facts)
            if (!test(words, f))
                return false;
        return true;
    }

    static void apply(std::vector<Word> &words, const model::GroundAction &a) {
        for (model::FactId f : a.del)
            words[f / 64] &= ~(Word{1} << (f % 64));
        for (model::FactId f : a.add)
            words[f / 64] |= Word{1} << (f % 64);
    }

private:
    std::size_t num_words_;
};

struct Node {
    Key key;
    long long g = 0;
    long parent = -1;
    model::ActionId action = -1;
};

SearchResult uniform_cost(const model::PlanningTask &task, const model::FactSet &from,
                          const model::FactSet &goal, const std::map<model::ActionId, int> &k,
                          std::size_t cap) {
    Bits bits(task.num_facts());
    std::vector<model::ActionId> counted;
    std::vector<int> slot(task.num_actions(), -1);
    Key start;
    start.words = bits.make(from);
    for (const auto &[action, count] : k) {
        if (action < 0 || static_cast<std::size_t>(action) >= task.num_actions())
            throw std::invalid_argument("count floor names an unknown action");
        if (count <= 0)
            continue;
        slot[action] = static_cast<int>(counted.size());
        counted.push_back(action);
        start.residual.push_back(count);
    }

    auto is_goal = [&](const Key &key) {
        if (!Bits::contains(key.words, goal))
            return false;
        return std::all_of(key.residual.begin(), key.residual.end(), [](int r) { return r == 0; });
    };

    std::vector<Node> nodes;
    std::unordered_map<Key, long long, KeyHash> best;
    using Entry = std::tuple<long long, std::size_t, std::size_t>;  // g, seq, node
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::unordered_map<Key, bool, KeyHash> closed;

    nodes.push_back({start, 0, -1, -1});
    best.emplace(start, 0);
    std::size_t seq = 0;
    open.emplace(0, seq++, 0);

    SearchResult result;
    while (!open.empty()) {
        auto [g, order, index] = open.top();
        open.pop();
        (void)order;
        const Key key = nodes[index].key;
        if (closed.count(key))
            continue;
        closed.emplace(key, true);
        if (is_goal(key)) {
            result.status = SearchStatus::Solved;
            result.plan.cost = g;
            for (long n = static_cast<long>(index); nodes[n].parent >= 0; n = nodes[n].parent)
                result.plan.steps.push_back(nodes[n].action);
            std::reverse(result.plan.steps.begin(), result.plan.steps.end());
            return result;
        }
        if (++result.expansions > cap) {
            result.status = SearchStatus::CapExceeded;
            return result;
        }
        for (const model::GroundAction &a : task.actions()) {
            if (!Bits::contains(key.words, a.pre))
                continue;
            Key next = key;
            Bits::apply(next.words, a);
            if (slot[a.id] >= 0 && next.residual[slot[a.id]] > 0)
                --next.residual[slot[a.id]];
            if (closed.count(next))
                continue;
            long long cost = g + a.cost;
            auto it = best.find(next);
            if (it != best.end() && it->second <= cost)
                continue;
            best[next] = cost;
            nodes.push_back({std::move(next), cost, static_cast<long>(index), a.id});
            open.emplace(cost, seq++, nodes.size() - 1);
        }
    }
    result.status = SearchStatus::Unreachable;
    return result;
}

}  // namespace

std::string_view to_string(SearchStatus status) {
    switch (status) {
    case SearchStatus::Solved:
        return "solved";
    case SearchStatus::Unreachable:
        return "unreachable";
    case SearchStatus::CapExceeded:
        return "cap-exceeded";
    }
    return "unknown";
}

SearchResult optimal_cost(const model::PlanningTask &task, const model::FactSet &goal,
                          std::size_t cap) {
    return uniform_cost(task, task.init(), goal, {}, cap);
}

SearchResult optimal_cost_from(const model::PlanningTask &task, const model::FactSet &from,
                               const model::FactSet &goal, std::size_t cap) {
    return uniform_cost(task, from, goal, {}, cap);
}

SearchResult optimal_cost_with_counts(const model::PlanningTask &task, const model::FactSet &goal,
                                      const std::map<model::ActionId, int> &k, std::size_t cap) {
    return uniform_cost(task, task.init(), goal, k, cap);
}

PlanCheck validate_plan(const model::PlanningTask &task, const std::vector<model::ActionId> &plan,
                        const model::FactSet &goal) {
    Bits bits(task.num_facts());
    std::vector<Word> state = bits.make(task.init());
    PlanCheck check;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        if (plan[i] < 0 || static_cast<std::size_t>(plan[i]) >= task.num_actions()) {
            check.failed_step = static_cast<long>(i);
            check.message = "step " + std::to_string(i + 1) + ": unknown action id " +
                            std::to_string(plan[i]);
            return check;
        }
        const model::GroundAction &a = task.action(plan[i]);
        for (model::FactId f : a.pre) {
            if (!Bits::test(state, f)) {
                check.failed_step = static_cast<long>(i);
                check.message = "step " + std::to_string(i + 1) + " " + a.name +
                                ": precondition " + task.fact_name(f) + " does not hold";
                return check;
            }
        }
        Bits::apply(state, a);
    }
    for (model::FactId f : goal) {
        if (!Bits::test(state, f)) {
            check.failed_step = static_cast<long>(plan.size());
            check.message = "goal fact " + task.fact_name(f) + " does not hold at the end";
            return check;
        }
    }
    check.valid = true;
    return check;
}

model::FactSet apply_plan(const model::PlanningTask &task,
                          const std::vector<model::ActionId> &plan) {
    PlanCheck check = validate_plan(task, plan, {});
    if (!check.valid)
        throw std::invalid_argument(check.message);
    Bits bits(task.num_facts());
    std::vector<Word> state = bits.make(task.init());
    for (model::ActionId a : plan)
        Bits::apply(state, task.action(a));
    model::FactSet facts;
    for (std::size_t f = 0; f < task.num_facts(); ++f)
        if (Bits::test(state, static_cast<model::FactId>(f)))
            facts.push_back(static_cast<model::FactId>(f));
    return facts;
}

std::vector<Plan> enumerate_plans(const model::PlanningTask &task, const model::FactSet &goal,
                                  std::size_t max_len, std::size_t node_cap) {
    Bits bits(task.num_facts());
    std::vector<Plan> plans;
    std::vector<model::ActionId> prefix;
    std::size_t visited = 0;
    long long cost = 0;

    auto visit = [&](auto &&self, const std::vector<Word> &state) -> void {
        if (++visited > node_cap)
            throw SearchCapExceeded("enumerate_plans: node cap of " + std::to_string(node_cap) +
                                    " exceeded");
        if (Bits::contains(state, goal))
            plans.push_back({prefix, cost});
        if (prefix.size() == max_len)
            return;
        for (const model::GroundAction &a : task.actions()) {
            if (!Bits::contains(state, a.pre))
                continue;
            std::vector<Word> next = state;
            Bits::apply(next, a);
            prefix.push_back(a.id);
            cost += a.cost;
            self(self, next);
            cost -= a.cost;
            prefix.pop_back();
        }
    };
    visit(visit, bits.make(task.init()));
    return plans;
}

std::vector<double> count_vector(const model::PlanningTask &task,
                                 const std::vector<model::ActionId> &plan) {
    std::vector<double> counts(task.num_actions(), 0.0);
    for (model::ActionId a : plan)
        counts.at(a) += 1.0;
    return counts;
}

}  // namespace goalrec::oracle
