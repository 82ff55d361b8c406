#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace goalrec::model {

// Node of a parsed s-expression. Atoms are lowercased; PDDL is
// case-insensitive.
struct SExpr {
    bool is_list = false;
    std::string atom;
    std::vector<SExpr> items;
    int line = 0;
    int column = 0;

    bool is_atom(std::string_view text) const { return !is_list && atom == text; }
    // True for a list whose first item is the given atom.
    bool is_form(std::string_view head) const {
        return is_list && !items.empty() && items.front().is_atom(head);
    }
    const std::string &head() const;
};

// Parses every top-level expression in `text`. Comments start with ';'.
// Throws ParseError with line/column on unbalanced parentheses.
std::vector<SExpr> parse_sexprs(std::string_view text);

// Parses text expected to hold exactly one top-level expression.
SExpr parse_single_sexpr(std::string_view text);

std::string to_string(const SExpr &expr);

}  // namespace goalrec::model
