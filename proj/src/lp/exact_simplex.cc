#include "goalrec/lp/backend.h"
#include "goalrec/util/errors.h"

#include <gmpxx.h>

#include <vector>

namespace goalrec::lp {

namespace {

// Standard form  A y - s = b  (rows with b < 0 are negated), one artificial
// per row, textbook phase I / phase II with Bland's rule. All arithmetic is
// exact.
class RationalTableau {
public:
    explicit RationalTableau(const LinearProgram &lp) : lp_(lp) {
        rows_ = lp.constraints.size();
        n_ = lp.num_vars;
        cols_ = n_ + 2 * rows_;  // structural, surplus, artificial
        a_.assign(rows_, std::vector<mpq_class>(cols_));
        b_.assign(rows_, mpq_class(0));
        basis_.assign(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const LinearConstraint &row = lp.constraints[r];
            mpq_class rhs(row.rhs);
            int sign = rhs < 0 ? -1 : 1;
            for (const auto &[var, coef] : row.terms)
                a_[r][var] += mpq_class(coef) * sign;
            a_[r][n_ + r] = -sign;
            a_[r][n_ + rows_ + r] = 1;
            b_[r] = rhs * sign;
            basis_[r] = n_ + rows_ + r;
        }
    }

    LpOutcome solve() {
        LpOutcome outcome;
        std::vector<mpq_class> phase_one(cols_, mpq_class(0));
        for (std::size_t r = 0; r < rows_; ++r)
            phase_one[n_ + rows_ + r] = 1;
        if (!optimize(phase_one, cols_))
            throw SolverError("exact simplex: phase one unbounded");
        if (objective(phase_one) > 0) {
            outcome.status = LpStatus::Infeasible;
            outcome.iterations = iterations_;
            return outcome;
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            if (basis_[r] < n_ + rows_)
                continue;
            for (std::size_t c = 0; c < n_ + rows_; ++c) {
                if (sgn(a_[r][c]) != 0) {
                    pivot(r, c);
                    break;
                }
            }
            // A row left with an artificial basic at zero is redundant; the
            // artificial never re-enters in phase two.
        }
        std::vector<mpq_class> phase_two(cols_, mpq_class(0));
        for (std::size_t v = 0; v < n_; ++v)
            phase_two[v] = mpq_class(lp_.objective[v]);
        if (!optimize(phase_two, n_ + rows_)) {
            outcome.status = LpStatus::Unbounded;
            outcome.iterations = iterations_;
            return outcome;
        }
        outcome.status = LpStatus::Optimal;
        outcome.iterations = iterations_;
        outcome.counts.assign(n_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            if (basis_[r] < n_)
                outcome.counts[basis_[r]] = b_[r].get_d();
        outcome.value = objective(phase_two).get_d();
        return outcome;
    }

private:
    mpq_class objective(const std::vector<mpq_class> &cost) const {
        mpq_class z = 0;
        for (std::size_t r = 0; r < rows_; ++r)
            z += cost[basis_[r]] * b_[r];
        return z;
    }

    bool optimize(const std::vector<mpq_class> &cost, std::size_t column_end) {
        const std::size_t limit = 100000;
        while (true) {
            // Reduced costs computed from scratch; Bland: first improving column.
            std::size_t entering = cols_;
            for (std::size_t c = 0; c < column_end && entering == cols_; ++c) {
                bool basic = false;
                for (std::size_t r = 0; r < rows_ && !basic; ++r)
                    basic = basis_[r] == c;
                if (basic)
                    continue;
                mpq_class reduced = cost[c];
                for (std::size_t r = 0; r < rows_; ++r)
                    if (sgn(a_[r][c]) != 0)
                        reduced -= cost[basis_[r]] * a_[r][c];
                if (reduced < 0)
                    entering = c;
            }
            if (entering == cols_)
                return true;
            std::size_t leaving = rows_;
            mpq_class best;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (sgn(a_[r][entering]) <= 0)
                    continue;
                mpq_class ratio = b_[r] / a_[r][entering];
                if (leaving == rows_ || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leaving])) {
                    leaving = r;
                    best = ratio;
                }
            }
            if (leaving == rows_)
                return false;
            if (++iterations_ > limit)
                throw SolverError("exact simplex iteration limit exceeded");
            pivot(leaving, entering);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        mpq_class inv = 1 / a_[row][col];
        for (mpq_class &x : a_[row])
            if (sgn(x) != 0)
                x *= inv;
        b_[row] *= inv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || sgn(a_[r][col]) == 0)
                continue;
            mpq_class factor = a_[r][col];
            for (std::size_t c = 0; c < cols_; ++c)
                if (sgn(a_[row][c]) != 0)
                    a_[r][c] -= factor * a_[row][c];
            b_[r] -= factor * b_[row];
        }
        basis_[row] = col;
    }

    const LinearProgram &lp_;
    std::size_t rows_ = 0;
    std::size_t n_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<mpq_class>> a_;
    std::vector<mpq_class> b_;
    std::vector<std::size_t> basis_;
    std::size_t iterations_ = 0;
};

}  // namespace

LpOutcome ExactRationalBackend::solve(const LinearProgram &lp) const {
    lp.validate();
    return RationalTableau(lp).solve();
}

}  // namespace goalrec::lp
