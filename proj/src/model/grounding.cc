#include "goalrec/model/grounding.h"

#include "goalrec/util/errors.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace goalrec::model {

namespace {

struct Candidate {
    std::string name;
    std::vector<std::string> pre;
    std::vector<std::string> add;
    std::vector<std::string> del;
};

class SchemaGrounder {
public:
    SchemaGrounder(const OperatorSchema &schema, const DomainDef &domain,
                   const std::vector<TypedName> &objects,
                   const std::set<std::string> &static_predicates,
                   const std::unordered_set<std::string> &init_atoms,
                   std::size_t &budget, std::size_t max_actions, std::vector<Candidate> &out)
        : schema_(schema), init_atoms_(init_atoms), budget_(budget),
          max_actions_(max_actions), out_(out) {
        for (std::size_t i = 0; i < schema.params.size(); ++i) {
            var_slot_[schema.params[i].name] = i;
            std::vector<const std::string *> domain_of_param;
            for (const TypedName &object : objects)
                if (domain.is_subtype(object.type, schema.params[i].type))
                    domain_of_param.push_back(&object.name);
            candidates_.push_back(std::move(domain_of_param));
        }
        // Each static precondition / equality test is checked as soon as
        // its last variable is bound.
        static_checks_.resize(schema.params.size() + 1);
        equality_checks_.resize(schema.params.size() + 1);
        for (const Atom &atom : schema.pre)
            if (static_predicates.count(atom.predicate))
                static_checks_[ready_depth(atom.args)].push_back(&atom);
        for (const auto &pair : schema.equal)
            equality_checks_[ready_depth({pair.first, pair.second})].push_back({&pair, true});
        for (const auto &pair : schema.not_equal)
            equality_checks_[ready_depth({pair.first, pair.second})].push_back({&pair, false});
        binding_.resize(schema.params.size());
    }

    void run() { extend(0); }

private:
    std::size_t ready_depth(const std::vector<std::string> &terms) const {
        std::size_t depth = 0;
        for (const std::string &term : terms) {
            auto it = var_slot_.find(term);
            if (it != var_slot_.end())
                depth = std::max(depth, it->second + 1);
        }
        return depth;
    }

    const std::string &resolve(const std::string &term) const {
        auto it = var_slot_.find(term);
        return it == var_slot_.end() ? term : *binding_[it->second];
    }

    std::string instantiate(const Atom &atom) const {
        std::string out = "(" + atom.predicate;
        for (const std::string &arg : atom.args)
            out += " " + resolve(arg);
        return out + ")";
    }

    bool checks_pass(std::size_t depth) const {
        for (const Atom *atom : static_checks_[depth])
            if (!init_atoms_.count(instantiate(*atom)))
                return false;
        for (const auto &[pair, must_equal] : equality_checks_[depth])
            if ((resolve(pair->first) == resolve(pair->second)) != must_equal)
                return false;
        return true;
    }

    void extend(std::size_t depth) {
        if (!checks_pass(depth))
            return;
        if (depth == binding_.size()) {
            emit();
            return;
        }
        for (const std::string *object : candidates_[depth]) {
            binding_[depth] = object;
            extend(depth + 1);
        }
    }

    void emit() {
        if (++budget_ > max_actions_)
            throw GroundingError("grounding exceeds the action cap of " +
                                 std::to_string(max_actions_) + " (schema " + schema_.name + ")");
        Candidate c;
        c.name = "(" + schema_.name;
        for (const std::string *object : binding_)
            c.name += " " + *object;
        c.name += ")";
        for (const Atom &atom : schema_.pre)
            c.pre.push_back(instantiate(atom));
        for (const Atom &atom : schema_.add)
            c.add.push_back(instantiate(atom));
        for (const Atom &atom : schema_.del)
            c.del.push_back(instantiate(atom));
        out_.push_back(std::move(c));
    }

    const OperatorSchema &schema_;
    const std::unordered_set<std::string> &init_atoms_;
    std::size_t &budget_;
    std::size_t max_actions_;
    std::vector<Candidate> &out_;
    std::map<std::string, std::size_t> var_slot_;
    std::vector<std::vector<const std::string *>> candidates_;
    std::vector<std::vector<const Atom *>> static_checks_;
    std::vector<std::vector<std::pair<const std::pair<std::string, std::string> *, bool>>>
        equality_checks_;
    std::vector<const std::string *> binding_;
};

void dedupe_in_order(std::vector<std::string> &items) {
    std::unordered_set<std::string> seen;
    std::vector<std::string> unique;
    for (std::string &item : items)
        if (seen.insert(item).second)
            unique.push_back(std::move(item));
    items = std::move(unique);
}

}  // namespace

PlanningTask ground(const DomainDef &domain, const ProblemDef &problem,
                    const GroundingOptions &options, std::span<const Atom> extra_atoms) {
    std::vector<TypedName> objects = domain.constants;
    objects.insert(objects.end(), problem.objects.begin(), problem.objects.end());
    std::sort(objects.begin(), objects.end(),
              [](const TypedName &a, const TypedName &b) { return a.name < b.name; });
    for (std::size_t i = 1; i < objects.size(); ++i)
        if (objects[i].name == objects[i - 1].name && objects[i].type != objects[i - 1].type)
            throw GroundingError("object " + objects[i].name + " declared with two types");
    objects.erase(std::unique(objects.begin(), objects.end(),
                              [](const TypedName &a, const TypedName &b) { return a.name == b.name; }),
                  objects.end());

    std::set<std::string> static_predicates;
    for (const PredicateDef &pred : domain.predicates)
        static_predicates.insert(pred.name);
    for (const OperatorSchema &op : domain.operators) {
        for (const Atom &atom : op.add)
            static_predicates.erase(atom.predicate);
        for (const Atom &atom : op.del)
            static_predicates.erase(atom.predicate);
    }

    std::vector<std::string> init_names;
    for (const Atom &atom : problem.init)
        init_names.push_back(to_string(atom));
    std::unordered_set<std::string> init_atoms(init_names.begin(), init_names.end());

    std::vector<Candidate> candidates;
    std::size_t budget = 0;
    for (const OperatorSchema &op : domain.operators)
        SchemaGrounder(op, domain, objects, static_predicates, init_atoms, budget,
                       options.max_actions, candidates)
            .run();

    std::vector<std::string> warnings;
    for (Candidate &c : candidates) {
        dedupe_in_order(c.pre);
        dedupe_in_order(c.add);
        dedupe_in_order(c.del);
        std::vector<std::string> kept_del;
        for (std::string &d : c.del) {
            if (std::find(c.add.begin(), c.add.end(), d) != c.add.end())
                warnings.push_back("action " + c.name + " adds and deletes " + d +
                                   "; the delete is dropped");
            else
                kept_del.push_back(std::move(d));
        }
        c.del = std::move(kept_del);
    }

    std::vector<bool> keep(candidates.size(), true);
    if (options.prune_unreachable) {
        std::fill(keep.begin(), keep.end(), false);
        std::unordered_set<std::string> reached = init_atoms;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (keep[i])
                    continue;
                const Candidate &c = candidates[i];
                if (std::all_of(c.pre.begin(), c.pre.end(),
                                [&](const std::string &p) { return reached.count(p) > 0; })) {
                    keep[i] = true;
                    changed = true;
                    for (const std::string &a : c.add)
                        reached.insert(a);
                }
            }
        }
    }

    std::vector<std::string> facts;
    std::unordered_map<std::string, FactId> fact_ids;
    auto intern = [&](const std::string &atom) {
        auto [it, inserted] = fact_ids.emplace(atom, static_cast<FactId>(facts.size()));
        if (inserted)
            facts.push_back(atom);
        return it->second;
    };

    FactSet init;
    for (const std::string &atom : init_names)
        init.push_back(intern(atom));
    FactSet goal;
    for (const Atom &atom : problem.goal)
        goal.push_back(intern(to_string(atom)));
    for (const Atom &atom : extra_atoms)
        intern(to_string(atom));

    std::vector<GroundAction> actions;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!keep[i])
            continue;
        const Candidate &c = candidates[i];
        GroundAction a;
        a.name = c.name;
        for (const std::string &p : c.pre)
            a.pre.push_back(intern(p));
        for (const std::string &p : c.add)
            a.add.push_back(intern(p));
        for (const std::string &p : c.del)
            a.del.push_back(intern(p));
        actions.push_back(std::move(a));
    }

    PlanningTask task(std::move(facts), std::move(actions), std::move(init), std::move(goal));
    for (std::string &w : warnings)
        task.add_warning(std::move(w));
    return task;
}

}  // namespace goalrec::model
