#include "goalrec/model/pddl.h"

#include "goalrec/model/sexpr.h"
#include "goalrec/util/errors.h"

#include <algorithm>
#include <set>

namespace goalrec::model {

std::string to_string(const Atom &atom) {
    std::string out = "(" + atom.predicate;
    for (const std::string &arg : atom.args)
        out += " " + arg;
    return out + ")";
}

const PredicateDef *DomainDef::find_predicate(std::string_view name) const {
    for (const PredicateDef &pred : predicates)
        if (pred.name == name)
            return &pred;
    return nullptr;
}

bool DomainDef::has_type(std::string_view type) const {
    return type == kRootType || type_parent.count(std::string(type)) > 0;
}

bool DomainDef::is_subtype(std::string_view type, std::string_view ancestor) const {
    std::string current(type);
    // Bounded walk; a cyclic hierarchy is rejected at parse time.
    for (std::size_t steps = 0; steps <= type_parent.size() + 1; ++steps) {
        if (current == ancestor)
            return true;
        auto it = type_parent.find(current);
        if (it == type_parent.end())
            return ancestor == kRootType;
        current = it->second;
    }
    return false;
}

namespace {

[[noreturn]] void fail(const SExpr &at, const std::string &message) {
    throw ParseError(message, at.line, at.column);
}

[[noreturn]] void unsupported(const SExpr &at, const std::string &construct) {
    throw UnsupportedFeature(construct, at.line, at.column);
}

const std::string &expect_atom(const SExpr &expr, const char *what) {
    if (expr.is_list)
        fail(expr, std::string("expected ") + what);
    return expr.atom;
}

const SExpr &expect_list(const SExpr &expr, const char *what) {
    if (!expr.is_list)
        fail(expr, std::string("expected ") + what + ", got '" + expr.atom + "'");
    return expr;
}

// Parses "a b - t c - u d" style typed lists. `first` skips leading items.
std::vector<TypedName> parse_typed_list(const SExpr &list, std::size_t first = 0) {
    std::vector<TypedName> result;
    std::vector<std::string> pending;
    const auto &items = list.items;
    for (std::size_t i = first; i < items.size(); ++i) {
        const SExpr &item = items[i];
        if (item.is_list) {
            if (item.is_form("either"))
                unsupported(item, "either types");
            fail(item, "unexpected list in typed list");
        }
        if (item.atom == "-") {
            if (i + 1 >= items.size())
                fail(item, "missing type after '-'");
            const SExpr &type = items[i + 1];
            if (type.is_form("either"))
                unsupported(type, "either types");
            const std::string &type_name = expect_atom(type, "type name");
            if (pending.empty())
                fail(item, "'-' without preceding names");
            for (std::string &name : pending)
                result.push_back({std::move(name), type_name});
            pending.clear();
            ++i;
        } else {
            pending.push_back(item.atom);
        }
    }
    for (std::string &name : pending)
        result.push_back({std::move(name), kRootType});
    return result;
}

const std::set<std::string> &allowed_requirements() {
    static const std::set<std::string> allowed = {":strips", ":typing", ":equality"};
    return allowed;
}

std::string requirement_construct(const std::string &req) {
    if (req == ":negative-preconditions")
        return "negative preconditions (:negative-preconditions)";
    if (req == ":conditional-effects")
        return "conditional effects (:conditional-effects)";
    if (req == ":numeric-fluents" || req == ":fluents")
        return "numeric fluents (" + req + ")";
    if (req == ":universal-preconditions" || req == ":existential-preconditions" ||
        req == ":quantified-preconditions")
        return "quantifiers (" + req + ")";
    return "requirement " + req;
}

void parse_requirements(const SExpr &section, std::vector<std::string> &out) {
    for (std::size_t i = 1; i < section.items.size(); ++i) {
        const std::string &req = expect_atom(section.items[i], "requirement flag");
        if (!allowed_requirements().count(req))
            unsupported(section.items[i], requirement_construct(req));
        out.push_back(req);
    }
}

Atom parse_atom(const SExpr &expr) {
    expect_list(expr, "atom");
    if (expr.items.empty())
        fail(expr, "empty atom");
    Atom atom;
    atom.predicate = expect_atom(expr.items.front(), "predicate symbol");
    for (std::size_t i = 1; i < expr.items.size(); ++i)
        atom.args.push_back(expect_atom(expr.items[i], "term"));
    return atom;
}

class SchemaChecker {
public:
    SchemaChecker(const DomainDef &domain, const OperatorSchema &schema)
        : domain_(domain) {
        for (const TypedName &param : schema.params)
            vars_.insert(param.name);
        for (const TypedName &constant : domain.constants)
            constants_.insert(constant.name);
    }

    void check_term(const SExpr &at, const std::string &term) const {
        if (!term.empty() && term.front() == '?') {
            if (!vars_.count(term))
                fail(at, "undeclared variable " + term);
        } else if (!constants_.count(term)) {
            fail(at, "unknown constant " + term);
        }
    }

    void check_atom(const SExpr &at, const Atom &atom) const {
        const PredicateDef *pred = domain_.find_predicate(atom.predicate);
        if (!pred)
            fail(at, "undeclared predicate " + atom.predicate);
        if (pred->arity() != atom.args.size())
            fail(at, "arity mismatch for " + atom.predicate + ": expected " +
                         std::to_string(pred->arity()) + ", got " +
                         std::to_string(atom.args.size()));
        for (const std::string &arg : atom.args)
            check_term(at, arg);
    }

private:
    const DomainDef &domain_;
    std::set<std::string> vars_;
    std::set<std::string> constants_;
};

void parse_precondition(const SExpr &expr, const SchemaChecker &checker, OperatorSchema &op) {
    if (!expr.is_list)
        fail(expr, "expected precondition formula");
    if (expr.items.empty())
        return;
    const std::string &head = expr.head();
    if (head == "and") {
        for (std::size_t i = 1; i < expr.items.size(); ++i)
            parse_precondition(expr.items[i], checker, op);
        return;
    }
    if (head == "=") {
        if (expr.items.size() != 3)
            fail(expr, "equality takes two terms");
        const std::string &lhs = expect_atom(expr.items[1], "term");
        const std::string &rhs = expect_atom(expr.items[2], "term");
        checker.check_term(expr, lhs);
        checker.check_term(expr, rhs);
        op.equal.emplace_back(lhs, rhs);
        return;
    }
    if (head == "not") {
        if (expr.items.size() != 2)
            fail(expr, "'not' takes one argument");
        const SExpr &inner = expr.items[1];
        if (inner.is_form("=") && inner.items.size() == 3) {
            const std::string &lhs = expect_atom(inner.items[1], "term");
            const std::string &rhs = expect_atom(inner.items[2], "term");
            checker.check_term(inner, lhs);
            checker.check_term(inner, rhs);
            op.not_equal.emplace_back(lhs, rhs);
            return;
        }
        unsupported(expr, "negative preconditions");
    }
    if (head == "or")
        unsupported(expr, "disjunctive preconditions");
    if (head == "imply")
        unsupported(expr, "implications");
    if (head == "exists" || head == "forall")
        unsupported(expr, "quantifiers (" + head + ")");
    if (head == "<" || head == ">" || head == "<=" || head == ">=")
        unsupported(expr, "numeric fluents");
    Atom atom = parse_atom(expr);
    checker.check_atom(expr, atom);
    op.pre.push_back(std::move(atom));
}

void parse_effect(const SExpr &expr, const SchemaChecker &checker, OperatorSchema &op) {
    if (!expr.is_list)
        fail(expr, "expected effect formula");
    if (expr.items.empty())
        return;
    const std::string &head = expr.head();
    if (head == "and") {
        for (std::size_t i = 1; i < expr.items.size(); ++i)
            parse_effect(expr.items[i], checker, op);
        return;
    }
    if (head == "when")
        unsupported(expr, "conditional effects");
    if (head == "forall")
        unsupported(expr, "quantifiers (forall)");
    if (head == "increase" || head == "decrease" || head == "assign" ||
        head == "scale-up" || head == "scale-down")
        unsupported(expr, "numeric fluents (" + head + ")");
    if (head == "not") {
        if (expr.items.size() != 2)
            fail(expr, "'not' takes one argument");
        Atom atom = parse_atom(expr.items[1]);
        checker.check_atom(expr, atom);
        op.del.push_back(std::move(atom));
        return;
    }
    Atom atom = parse_atom(expr);
    checker.check_atom(expr, atom);
    op.add.push_back(std::move(atom));
}

OperatorSchema parse_action(const SExpr &section, const DomainDef &domain) {
    if (section.items.size() < 2)
        fail(section, "action without name");
    OperatorSchema op;
    op.name = expect_atom(section.items[1], "action name");
    const SExpr *pre = nullptr;
    const SExpr *eff = nullptr;
    for (std::size_t i = 2; i < section.items.size(); i += 2) {
        const std::string &key = expect_atom(section.items[i], "action keyword");
        if (i + 1 >= section.items.size())
            fail(section.items[i], "missing value for " + key);
        const SExpr &value = section.items[i + 1];
        if (key == ":parameters") {
            op.params = parse_typed_list(expect_list(value, "parameter list"));
            for (const TypedName &param : op.params) {
                if (param.name.empty() || param.name.front() != '?')
                    fail(value, "parameter must start with '?': " + param.name);
                if (!domain.has_type(param.type))
                    fail(value, "undeclared type " + param.type);
            }
        } else if (key == ":precondition") {
            pre = &value;
        } else if (key == ":effect") {
            eff = &value;
        } else {
            unsupported(section.items[i], "action field " + key);
        }
    }
    SchemaChecker checker(domain, op);
    if (pre)
        parse_precondition(*pre, checker, op);
    if (eff)
        parse_effect(*eff, checker, op);
    return op;
}

void parse_types(const SExpr &section, DomainDef &domain) {
    for (const TypedName &entry : parse_typed_list(section, 1)) {
        if (entry.name == kRootType)
            continue;
        domain.type_parent[entry.name] = entry.type;
    }
    // Parents that were never declared themselves hang off the root.
    std::vector<std::string> parents;
    for (const auto &[child, parent] : domain.type_parent)
        parents.push_back(parent);
    for (const std::string &parent : parents)
        if (parent != kRootType && !domain.type_parent.count(parent))
            domain.type_parent[parent] = kRootType;
    for (const auto &[child, parent] : domain.type_parent) {
        std::string current = parent;
        for (std::size_t steps = 0; current != kRootType; ++steps) {
            if (current == child || steps > domain.type_parent.size())
                fail(section, "cyclic type hierarchy at " + child);
            current = domain.type_parent.at(current);
        }
    }
}

const SExpr &expect_define(const std::vector<SExpr> &top, const char *kind) {
    if (top.empty())
        throw ParseError(std::string("empty ") + kind + " file");
    if (top.size() > 1)
        fail(top[1], "trailing content after define");
    const SExpr &def = top.front();
    if (!def.is_form("define"))
        fail(def, "expected (define ...)");
    if (def.items.size() < 2 || !def.items[1].is_form(kind) || def.items[1].items.size() != 2)
        fail(def, std::string("expected (") + kind + " <name>)");
    return def;
}

}  // namespace

DomainDef parse_domain(std::string_view text) {
    std::vector<SExpr> top = parse_sexprs(text);
    const SExpr &def = expect_define(top, "domain");
    DomainDef domain;
    domain.name = expect_atom(def.items[1].items[1], "domain name");

    std::vector<const SExpr *> actions;
    for (std::size_t i = 2; i < def.items.size(); ++i) {
        const SExpr &section = expect_list(def.items[i], "domain section");
        const std::string &key = section.head();
        if (key == ":requirements") {
            parse_requirements(section, domain.requirements);
        } else if (key == ":types") {
            parse_types(section, domain);
        } else if (key == ":constants") {
            domain.constants = parse_typed_list(section, 1);
        } else if (key == ":predicates") {
            for (std::size_t j = 1; j < section.items.size(); ++j) {
                const SExpr &decl = expect_list(section.items[j], "predicate declaration");
                if (decl.items.empty())
                    fail(decl, "empty predicate declaration");
                PredicateDef pred;
                pred.name = expect_atom(decl.items.front(), "predicate symbol");
                pred.params = parse_typed_list(decl, 1);
                if (domain.find_predicate(pred.name))
                    fail(decl, "duplicate predicate " + pred.name);
                domain.predicates.push_back(std::move(pred));
            }
        } else if (key == ":action") {
            actions.push_back(&section);
        } else if (key == ":functions") {
            unsupported(section, "numeric fluents (:functions)");
        } else if (key == ":derived") {
            unsupported(section, "derived predicates");
        } else if (key == ":durative-action") {
            unsupported(section, "durative actions");
        } else {
            unsupported(section, "domain section " + key);
        }
    }
    for (const PredicateDef &pred : domain.predicates)
        for (const TypedName &param : pred.params)
            if (!domain.has_type(param.type))
                throw ParseError("undeclared type " + param.type + " in predicate " + pred.name);
    for (const TypedName &constant : domain.constants)
        if (!domain.has_type(constant.type))
            throw ParseError("undeclared type " + constant.type + " for constant " + constant.name);
    std::set<std::string> names;
    for (const SExpr *section : actions) {
        OperatorSchema op = parse_action(*section, domain);
        if (!names.insert(op.name).second)
            fail(*section, "duplicate action " + op.name);
        domain.operators.push_back(std::move(op));
    }
    return domain;
}

namespace {

void check_ground_atom(const SExpr &at, const Atom &atom, const DomainDef &domain,
                       const std::set<std::string> &objects) {
    const PredicateDef *pred = domain.find_predicate(atom.predicate);
    if (!pred)
        fail(at, "undeclared predicate " + atom.predicate);
    if (pred->arity() != atom.args.size())
        fail(at, "arity mismatch for " + atom.predicate + ": expected " +
                     std::to_string(pred->arity()) + ", got " + std::to_string(atom.args.size()));
    for (const std::string &arg : atom.args)
        if (!objects.count(arg))
            fail(at, "undeclared object " + arg);
}

std::set<std::string> object_names(const DomainDef &domain, const ProblemDef &problem) {
    std::set<std::string> names;
    for (const TypedName &c : domain.constants)
        names.insert(c.name);
    for (const TypedName &o : problem.objects)
        names.insert(o.name);
    return names;
}

void parse_goal(const SExpr &expr, const DomainDef &domain, const std::set<std::string> &objects,
                std::vector<Atom> &out) {
    expect_list(expr, "goal formula");
    if (expr.items.empty())
        return;
    const std::string &head = expr.head();
    if (head == "and") {
        for (std::size_t i = 1; i < expr.items.size(); ++i)
            parse_goal(expr.items[i], domain, objects, out);
        return;
    }
    if (head == "not")
        unsupported(expr, "negative goals");
    if (head == "or" || head == "imply" || head == "exists" || head == "forall")
        unsupported(expr, "non-conjunctive goals (" + head + ")");
    Atom atom = parse_atom(expr);
    check_ground_atom(expr, atom, domain, objects);
    out.push_back(std::move(atom));
}

}  // namespace

ProblemDef parse_problem(std::string_view text, const DomainDef &domain) {
    std::vector<SExpr> top = parse_sexprs(text);
    const SExpr &def = expect_define(top, "problem");
    ProblemDef problem;
    problem.name = expect_atom(def.items[1].items[1], "problem name");

    const SExpr *init = nullptr;
    const SExpr *goal = nullptr;
    for (std::size_t i = 2; i < def.items.size(); ++i) {
        const SExpr &section = expect_list(def.items[i], "problem section");
        const std::string &key = section.head();
        if (key == ":domain") {
            if (section.items.size() != 2)
                fail(section, "expected (:domain <name>)");
            problem.domain_name = expect_atom(section.items[1], "domain name");
        } else if (key == ":requirements") {
            std::vector<std::string> reqs;
            parse_requirements(section, reqs);
        } else if (key == ":objects") {
            problem.objects = parse_typed_list(section, 1);
            for (const TypedName &object : problem.objects)
                if (!domain.has_type(object.type))
                    fail(section, "undeclared type " + object.type + " for object " + object.name);
        } else if (key == ":init") {
            init = &section;
        } else if (key == ":goal") {
            goal = &section;
        } else if (key == ":metric") {
            // Unit costs throughout; a metric adds nothing.
        } else {
            unsupported(section, "problem section " + key);
        }
    }
    if (!problem.domain_name.empty() && problem.domain_name != domain.name)
        throw ParseError("problem refers to domain " + problem.domain_name + ", expected " +
                         domain.name);

    std::set<std::string> objects = object_names(domain, problem);
    if (init) {
        for (std::size_t i = 1; i < init->items.size(); ++i) {
            const SExpr &item = init->items[i];
            if (item.is_form("="))
                unsupported(item, "numeric fluents in :init");
            if (item.is_form("not"))
                fail(item, "negative literal in :init");
            Atom atom = parse_atom(item);
            check_ground_atom(item, atom, domain, objects);
            if (std::find(problem.init.begin(), problem.init.end(), atom) == problem.init.end())
                problem.init.push_back(std::move(atom));
        }
    }
    if (goal) {
        problem.has_goal = true;
        for (std::size_t i = 1; i < goal->items.size(); ++i)
            parse_goal(goal->items[i], domain, objects, problem.goal);
    }
    return problem;
}

Atom parse_ground_atom(std::string_view text, const DomainDef &domain, const ProblemDef &problem) {
    SExpr expr = parse_single_sexpr(text);
    Atom atom = parse_atom(expr);
    check_ground_atom(expr, atom, domain, object_names(domain, problem));
    return atom;
}

}  // namespace goalrec::model
