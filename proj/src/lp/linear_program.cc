#include "goalrec/lp/linear_program.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace goalrec::lp {

std::string_view to_string(LpStatus status) {
    switch (status) {
    case LpStatus::Optimal:
        return "optimal";
    case LpStatus::Infeasible:
        return "infeasible";
    case LpStatus::Unbounded:
        return "unbounded";
    }
    return "unknown";
}

void LinearProgram::validate() const {
    if (objective.size() != num_vars)
        throw std::invalid_argument("objective size differs from num_vars");
    for (double c : objective)
        if (!std::isfinite(c))
            throw std::invalid_argument("non-finite objective coefficient");
    for (const LinearConstraint &row : constraints) {
        if (!std::isfinite(row.rhs))
            throw std::invalid_argument("non-finite right-hand side");
        for (const auto &[var, coef] : row.terms) {
            if (var < 0 || static_cast<std::size_t>(var) >= num_vars)
                throw std::invalid_argument("constraint references variable " +
                                            std::to_string(var) + " out of range");
            if (!std::isfinite(coef))
                throw std::invalid_argument("non-finite constraint coefficient");
        }
    }
}

namespace {
void write_linear(std::ostream &out, const std::vector<std::pair<int, double>> &terms) {
    if (terms.empty()) {
        out << " 0 y0";
        return;
    }
    bool first = true;
    for (const auto &[var, coef] : terms) {
        if (first)
            out << ' ' << coef << " y" << var;
        else
            out << (coef < 0 ? " - " : " + ") << std::abs(coef) << " y" << var;
        first = false;
    }
}
}  // namespace

std::string to_lp_format(const LinearProgram &lp, const std::vector<std::string> &names) {
    std::ostringstream out;
    out.precision(17);
    out << "\\ operator-counting LP, " << lp.num_vars << " variables\n";
    for (std::size_t i = 0; i < names.size() && i < lp.num_vars; ++i)
        out << "\\ y" << i << " = " << names[i] << "\n";
    out << "Minimize\n obj:";
    std::vector<std::pair<int, double>> obj;
    for (std::size_t i = 0; i < lp.num_vars; ++i)
        if (lp.objective[i] != 0.0)
            obj.emplace_back(static_cast<int>(i), lp.objective[i]);
    write_linear(out, obj);
    out << "\nSubject To\n";
    for (std::size_t r = 0; r < lp.constraints.size(); ++r) {
        const LinearConstraint &row = lp.constraints[r];
        out << " c" << r << ":";
        write_linear(out, row.terms);
        out << " >= " << row.rhs << "\n";
    }
    out << "Bounds\n";
    for (std::size_t i = 0; i < lp.num_vars; ++i)
        out << " y" << i << " >= 0\n";
    out << "End\n";
    return out.str();
}

}  // namespace goalrec::lp
