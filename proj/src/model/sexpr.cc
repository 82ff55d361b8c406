#include "goalrec/model/sexpr.h"

#include "goalrec/util/errors.h"

#include <cctype>

namespace goalrec::model {

const std::string &SExpr::head() const {
    static const std::string empty;
    if (!is_list || items.empty() || items.front().is_list)
        return empty;
    return items.front().atom;
}

namespace {
class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    std::vector<SExpr> read_all() {
        std::vector<SExpr> result;
        skip_blank();
        while (pos_ < text_.size()) {
            result.push_back(read());
            skip_blank();
        }
        return result;
    }

private:
    SExpr read() {
        skip_blank();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", line_, column_);
        SExpr node;
        node.line = line_;
        node.column = column_;
        char c = text_[pos_];
        if (c == ')')
            throw ParseError("unexpected ')'", line_, column_);
        if (c == '(') {
            advance();
            node.is_list = true;
            while (true) {
                skip_blank();
                if (pos_ >= text_.size())
                    throw ParseError("unclosed '(' opened here", node.line, node.column);
                if (text_[pos_] == ')') {
                    advance();
                    break;
                }
                node.items.push_back(read());
            }
            return node;
        }
        while (pos_ < text_.size()) {
            c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';')
                break;
            node.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            advance();
        }
        return node;
    }

    void skip_blank() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};
}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) {
    return Reader(text).read_all();
}

SExpr parse_single_sexpr(std::string_view text) {
    std::vector<SExpr> all = parse_sexprs(text);
    if (all.empty())
        throw ParseError("empty input");
    if (all.size() > 1)
        throw ParseError("trailing content after expression", all[1].line, all[1].column);
    return std::move(all.front());
}

std::string to_string(const SExpr &expr) {
    if (!expr.is_list)
        return expr.atom;
    std::string out = "(";
    for (std::size_t i = 0; i < expr.items.size(); ++i) {
        if (i)
            out += ' ';
        out += to_string(expr.items[i]);
    }
    out += ')';
    return out;
}

}  // namespace goalrec::model
