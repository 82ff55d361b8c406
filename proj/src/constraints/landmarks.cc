#include "goalrec/constraints/generators.h"
#include "goalrec/constraints/hmax.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <queue>

namespace goalrec::constraints {

namespace {

/*
  Relaxed view of the task used by the cut rounds. Two artificial facts are
  appended: `pre_fact` (true initially, precondition of actions without
  preconditions) and `goal_fact` (added by a zero-cost goal operator whose
  preconditions are the goal facts).
*/
struct RelaxedOperator {
    std::vector<int> pre;
    std::vector<int> eff;
    Rational cost;
    int action = -1;  // -1 for the goal operator
};

class LandmarkCut {
public:
    LandmarkCut(const model::PlanningTask &task, const model::FactSet &goal)
        : num_facts_(static_cast<int>(task.num_facts()) + 2),
          pre_fact_(static_cast<int>(task.num_facts())),
          goal_fact_(static_cast<int>(task.num_facts()) + 1) {
        for (const model::GroundAction &a : task.actions()) {
            RelaxedOperator op;
            op.pre.assign(a.pre.begin(), a.pre.end());
            if (op.pre.empty())
                op.pre.push_back(pre_fact_);
            op.eff.assign(a.add.begin(), a.add.end());
            op.cost = Rational(a.cost);
            op.action = a.id;
            ops_.push_back(std::move(op));
        }
        RelaxedOperator goal_op;
        goal_op.pre.assign(goal.begin(), goal.end());
        if (goal_op.pre.empty())
            goal_op.pre.push_back(pre_fact_);
        goal_op.eff.push_back(goal_fact_);
        goal_op.cost = Rational(0);
        ops_.push_back(std::move(goal_op));

        precondition_of_.resize(num_facts_);
        achievers_.resize(num_facts_);
        for (std::size_t i = 0; i < ops_.size(); ++i) {
            for (int p : ops_[i].pre)
                precondition_of_[p].push_back(static_cast<int>(i));
            for (int e : ops_[i].eff)
                achievers_[e].push_back(static_cast<int>(i));
        }
        init_.assign(task.init().begin(), task.init().end());
        init_.push_back(pre_fact_);
    }

    ConstraintSet run(std::size_t num_actions) {
        ConstraintSet result;
        result.num_actions = num_actions;
        // Each round zeroes the residual cost of at least one operator.
        for (std::size_t round = 0; round <= ops_.size(); ++round) {
            compute_hmax();
            if (!value_[goal_fact_]) {
                if (round == 0) {
                    result.infeasible = true;
                    result.infeasible_reason = "goal unreachable in the delete relaxation";
                }
                break;
            }
            if (*value_[goal_fact_] == Rational(0))
                break;
            std::vector<int> cut = find_cut();
            if (cut.empty())
                break;
            Rational cut_cost = ops_[cut.front()].cost;
            for (int op : cut)
                cut_cost = std::min(cut_cost, ops_[op].cost);
            LinearConstraint row;
            row.rhs = 1.0;
            row.source = ConstraintSource::Landmark;
            std::vector<int> actions;
            for (int op : cut) {
                ops_[op].cost -= cut_cost;
                if (ops_[op].action >= 0)
                    actions.push_back(ops_[op].action);
            }
            std::sort(actions.begin(), actions.end());
            for (int a : actions)
                row.terms.emplace_back(a, 1.0);
            result.constraints.push_back(std::move(row));
        }
        return result;
    }

private:
    void compute_hmax() {
        value_.assign(num_facts_, std::nullopt);
        std::vector<std::size_t> unsatisfied(ops_.size());
        for (std::size_t i = 0; i < ops_.size(); ++i)
            unsatisfied[i] = ops_[i].pre.size();
        using Entry = std::pair<Rational, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
        auto relax = [&](int f, const Rational &cost) {
            if (!value_[f] || cost < *value_[f]) {
                value_[f] = cost;
                queue.emplace(cost, f);
            }
        };
        for (int f : init_)
            relax(f, Rational(0));
        std::vector<bool> settled(num_facts_, false);
        while (!queue.empty()) {
            auto [cost, f] = queue.top();
            queue.pop();
            if (settled[f] || cost != *value_[f])
                continue;
            settled[f] = true;
            for (int op : precondition_of_[f])
                if (--unsatisfied[op] == 0)
                    for (int e : ops_[op].eff)
                        relax(e, cost + ops_[op].cost);
        }
    }

    // Precondition with maximal h_max; ties go to the lowest fact index.
    // nullopt when some precondition is unreachable.
    std::optional<int> choose_precondition(const RelaxedOperator &op) const {
        int best = -1;
        for (int p : op.pre) {
            if (!value_[p])
                return std::nullopt;
            if (best < 0 || *value_[p] > *value_[best] ||
                (*value_[p] == *value_[best] && p < best))
                best = p;
        }
        return best;
    }

    std::vector<int> find_cut() const {
        std::vector<std::optional<int>> chosen(ops_.size());
        for (std::size_t i = 0; i < ops_.size(); ++i)
            chosen[i] = choose_precondition(ops_[i]);

        // Goal zone: facts reaching the artificial goal through zero-cost
        // justification-graph edges.
        std::vector<bool> goal_zone(num_facts_, false);
        std::deque<int> queue{goal_fact_};
        goal_zone[goal_fact_] = true;
        while (!queue.empty()) {
            int f = queue.front();
            queue.pop_front();
            for (int op : achievers_[f]) {
                if (!chosen[op] || ops_[op].cost != Rational(0))
                    continue;
                int p = *chosen[op];
                if (!goal_zone[p]) {
                    goal_zone[p] = true;
                    queue.push_back(p);
                }
            }
        }

        // Forward sweep from the initial facts without entering the goal
        // zone; operators crossing into it form the cut.
        std::vector<bool> seen(num_facts_, false);
        std::vector<bool> in_cut(ops_.size(), false);
        for (int f : init_) {
            if (!goal_zone[f] && !seen[f]) {
                seen[f] = true;
                queue.push_back(f);
            }
        }
        while (!queue.empty()) {
            int f = queue.front();
            queue.pop_front();
            for (int op : precondition_of_[f]) {
                if (!chosen[op] || *chosen[op] != f)
                    continue;
                for (int e : ops_[op].eff) {
                    if (goal_zone[e]) {
                        in_cut[op] = true;
                    } else if (!seen[e]) {
                        seen[e] = true;
                        queue.push_back(e);
                    }
                }
            }
        }
        std::vector<int> cut;
        for (std::size_t i = 0; i < ops_.size(); ++i)
            if (in_cut[i])
                cut.push_back(static_cast<int>(i));
        return cut;
    }

    int num_facts_;
    int pre_fact_;
    int goal_fact_;
    std::vector<RelaxedOperator> ops_;
    std::vector<std::vector<int>> precondition_of_;
    std::vector<std::vector<int>> achievers_;
    std::vector<int> init_;
    std::vector<std::optional<Rational>> value_;
};

}  // namespace

ConstraintSet landmark_constraints(const model::PlanningTask &task, const model::FactSet &goal) {
    return LandmarkCut(task, goal).run(task.num_actions());
}

}  // namespace goalrec::constraints
