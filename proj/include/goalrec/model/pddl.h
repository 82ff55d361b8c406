#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace goalrec::model {

inline constexpr const char *kRootType = "object";

struct TypedName {
    std::string name;
    std::string type = kRootType;
};

// Atom over variables ("?x") and/or object names.
struct Atom {
    std::string predicate;
    std::vector<std::string> args;

    bool operator==(const Atom &) const = default;
};

std::string to_string(const Atom &atom);

struct PredicateDef {
    std::string name;
    std::vector<TypedName> params;

    std::size_t arity() const { return params.size(); }
};

struct OperatorSchema {
    std::string name;
    std::vector<TypedName> params;
    std::vector<Atom> pre;
    std::vector<Atom> add;
    std::vector<Atom> del;
    // (= ?a ?b) and (not (= ?a ?b)) preconditions, checked while grounding.
    std::vector<std::pair<std::string, std::string>> equal;
    std::vector<std::pair<std::string, std::string>> not_equal;
};

struct DomainDef {
    std::string name;
    std::vector<std::string> requirements;
    // child type -> parent type; every declared type appears as a key
    // except the root.
    std::map<std::string, std::string> type_parent;
    std::vector<TypedName> constants;
    std::vector<PredicateDef> predicates;
    std::vector<OperatorSchema> operators;

    const PredicateDef *find_predicate(std::string_view name) const;
    bool has_type(std::string_view type) const;
    bool is_subtype(std::string_view type, std::string_view ancestor) const;
};

struct ProblemDef {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<Atom> init;
    // Empty when the problem has no (:goal ...) section (hypothesis templates).
    std::vector<Atom> goal;
    bool has_goal = false;
};

DomainDef parse_domain(std::string_view text);
ProblemDef parse_problem(std::string_view text, const DomainDef &domain);

// Parses a ground atom such as "(on a b)" and checks it against the
// domain's predicates and the problem's objects.
Atom parse_ground_atom(std::string_view text, const DomainDef &domain, const ProblemDef &problem);

}  // namespace goalrec::model
