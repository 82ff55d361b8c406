#include "goalrec/lp/linear_program.h"
#include "goalrec/util/errors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace goalrec::lp {

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kDropTolerance = 1e-12;

/*
  Dense tableau over columns [structural | slack | artificial]. Every >= row
  is negated into <= form with a slack; rows whose negated right-hand side
  is negative get flipped back and receive an artificial basic variable.
  Variables that appear in no constraint are not given a column.
*/
class DenseSimplex {
public:
    explicit DenseSimplex(const LinearProgram &lp) : lp_(lp) {
        column_of_.assign(lp.num_vars, -1);
        for (const LinearConstraint &row : lp.constraints)
            for (const auto &[var, coef] : row.terms)
                if (coef != 0.0 && column_of_[var] < 0) {
                    column_of_[var] = static_cast<int>(structural_.size());
                    structural_.push_back(var);
                }
        num_structural_ = structural_.size();
        num_rows_ = lp.constraints.size();
        std::size_t num_artificial = 0;
        for (const LinearConstraint &row : lp.constraints)
            if (-row.rhs < 0.0)
                ++num_artificial;
        first_artificial_ = num_structural_ + num_rows_;
        num_cols_ = first_artificial_ + num_artificial;

        tableau_.assign(num_rows_, std::vector<double>(num_cols_, 0.0));
        rhs_.assign(num_rows_, 0.0);
        basis_.assign(num_rows_, 0);
        std::size_t next_artificial = first_artificial_;
        for (std::size_t r = 0; r < num_rows_; ++r) {
            const LinearConstraint &row = lp.constraints[r];
            std::map<int, double> merged;
            for (const auto &[var, coef] : row.terms)
                merged[var] += coef;
            const bool flip = -row.rhs < 0.0;
            const double sign = flip ? 1.0 : -1.0;
            for (const auto &[var, coef] : merged)
                if (coef != 0.0)
                    tableau_[r][column_of_[var]] = sign * coef;
            tableau_[r][num_structural_ + r] = flip ? -1.0 : 1.0;
            rhs_[r] = sign * row.rhs;
            if (flip) {
                tableau_[r][next_artificial] = 1.0;
                basis_[r] = next_artificial++;
            } else {
                basis_[r] = num_structural_ + r;
            }
        }
        iteration_limit_ = 200 * (num_rows_ + num_cols_) + 1000;
    }

    LpOutcome solve() {
        LpOutcome outcome;
        for (std::size_t v = 0; v < lp_.num_vars; ++v) {
            if (column_of_[v] < 0 && lp_.objective[v] < 0.0) {
                outcome.status = LpStatus::Unbounded;
                return outcome;
            }
        }

        if (first_artificial_ < num_cols_) {
            std::vector<double> phase_one(num_cols_, 0.0);
            for (std::size_t c = first_artificial_; c < num_cols_; ++c)
                phase_one[c] = 1.0;
            price(phase_one);
            run(num_cols_);
            if (objective_value_ > kPhaseOneInfeasible) {
                outcome.status = LpStatus::Infeasible;
                outcome.iterations = iterations_;
                return outcome;
            }
            drive_out_artificials();
        }

        std::vector<double> phase_two(num_cols_, 0.0);
        for (std::size_t c = 0; c < num_structural_; ++c)
            phase_two[c] = lp_.objective[structural_[c]];
        price(phase_two);
        if (!run(first_artificial_)) {
            outcome.status = LpStatus::Unbounded;
            outcome.iterations = iterations_;
            return outcome;
        }

        outcome.status = LpStatus::Optimal;
        outcome.iterations = iterations_;
        outcome.counts.assign(lp_.num_vars, 0.0);
        for (std::size_t r = 0; r < num_rows_; ++r)
            if (basis_[r] < num_structural_)
                outcome.counts[structural_[basis_[r]]] = std::max(0.0, rhs_[r]);
        double value = 0.0;
        for (std::size_t v = 0; v < lp_.num_vars; ++v)
            value += lp_.objective[v] * outcome.counts[v];
        // Integral optima are the common case with unit costs.
        double nearest = std::round(value);
        outcome.value = std::abs(value - nearest) < 1e-9 ? nearest : value;
        return outcome;
    }

private:
    // Rebuild reduced costs and objective for cost vector `costs`.
    void price(const std::vector<double> &costs) {
        reduced_ = costs;
        objective_value_ = 0.0;
        for (std::size_t r = 0; r < num_rows_; ++r) {
            double cb = costs[basis_[r]];
            if (cb == 0.0)
                continue;
            for (std::size_t c = 0; c < num_cols_; ++c)
                reduced_[c] -= cb * tableau_[r][c];
            objective_value_ += cb * rhs_[r];
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        std::vector<double> &pivot_row = tableau_[row];
        const double inv = 1.0 / pivot_row[col];
        for (double &x : pivot_row)
            x *= inv;
        rhs_[row] *= inv;
        pivot_row[col] = 1.0;
        auto eliminate = [&](std::vector<double> &target, double &target_rhs) {
            const double factor = target[col];
            if (factor == 0.0)
                return;
            for (std::size_t c = 0; c < num_cols_; ++c) {
                target[c] -= factor * pivot_row[c];
                if (std::abs(target[c]) < kDropTolerance)
                    target[c] = 0.0;
            }
            target[col] = 0.0;
            target_rhs -= factor * rhs_[row];
        };
        for (std::size_t r = 0; r < num_rows_; ++r) {
            if (r == row)
                continue;
            eliminate(tableau_[r], rhs_[r]);
            if (std::abs(rhs_[r]) < kDropTolerance)
                rhs_[r] = 0.0;
        }
        double objective_shift = -objective_value_;
        eliminate(reduced_, objective_shift);
        objective_value_ = -objective_shift;
        basis_[row] = col;
    }

    // Returns false when unbounded. Only columns below `column_end` may enter.
    bool run(std::size_t column_end) {
        const std::size_t degenerate_limit = 2 * (num_rows_ + num_cols_);
        std::size_t degenerate_streak = 0;
        bool bland = false;
        while (true) {
            std::size_t entering = num_cols_;
            double best = -kFeasibilityTolerance;
            for (std::size_t c = 0; c < column_end; ++c) {
                if (reduced_[c] < best) {
                    entering = c;
                    if (bland)
                        break;
                    best = reduced_[c];
                }
            }
            if (entering == num_cols_)
                return true;

            std::size_t leaving = num_rows_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < num_rows_; ++r) {
                const double a = tableau_[r][entering];
                if (a <= kPivotTolerance)
                    continue;
                const double ratio = rhs_[r] / a;
                const double slack = 1e-12 * (1.0 + std::abs(best_ratio));
                if (leaving == num_rows_ || ratio < best_ratio - slack) {
                    leaving = r;
                    best_ratio = ratio;
                } else if (ratio <= best_ratio + slack) {
                    bool take = bland ? basis_[r] < basis_[leaving]
                                      : a > tableau_[leaving][entering];
                    if (take) {
                        leaving = r;
                        best_ratio = std::min(best_ratio, ratio);
                    }
                }
            }
            if (leaving == num_rows_)
                return false;

            if (rhs_[leaving] <= kFeasibilityTolerance) {
                if (++degenerate_streak > degenerate_limit)
                    bland = true;
            } else {
                degenerate_streak = 0;
            }
            if (++iterations_ > iteration_limit_)
                throw SolverError("simplex iteration limit (" + std::to_string(iteration_limit_) +
                                  ") exceeded");
            pivot(leaving, entering);
        }
    }

    void drive_out_artificials() {
        for (std::size_t r = 0; r < num_rows_;) {
            if (basis_[r] < first_artificial_) {
                ++r;
                continue;
            }
            std::size_t best_col = num_cols_;
            double best_abs = kPivotTolerance;
            for (std::size_t c = 0; c < first_artificial_; ++c) {
                if (std::abs(tableau_[r][c]) > best_abs) {
                    best_abs = std::abs(tableau_[r][c]);
                    best_col = c;
                }
            }
            if (best_col < num_cols_) {
                pivot(r, best_col);
                ++r;
            } else {
                // Redundant row.
                tableau_.erase(tableau_.begin() + static_cast<std::ptrdiff_t>(r));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
                --num_rows_;
            }
        }
    }

    const LinearProgram &lp_;
    std::vector<int> column_of_;
    std::vector<int> structural_;
    std::size_t num_structural_ = 0;
    std::size_t num_rows_ = 0;
    std::size_t num_cols_ = 0;
    std::size_t first_artificial_ = 0;
    std::vector<std::vector<double>> tableau_;
    std::vector<double> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<double> reduced_;
    double objective_value_ = 0.0;
    std::size_t iterations_ = 0;
    std::size_t iteration_limit_ = 0;
};

}  // namespace

LpOutcome solve_lp(const LinearProgram &lp) {
    lp.validate();
    return DenseSimplex(lp).solve();
}

}  // namespace goalrec::lp
