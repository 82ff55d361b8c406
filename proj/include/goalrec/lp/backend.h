#pragma once

#include "goalrec/lp/linear_program.h"

#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace goalrec::lp {

// Pluggable LP solver. Implementations honor the solve_lp() contract.
class LpBackend {
public:
    virtual ~LpBackend() = default;
    virtual std::string name() const = 0;
    virtual LpOutcome solve(const LinearProgram &lp) const = 0;
};

// The built-in floating-point simplex.
class SimplexBackend final : public LpBackend {
public:
    std::string name() const override { return "simplex"; }
    LpOutcome solve(const LinearProgram &lp) const override { return solve_lp(lp); }
};

// Exact rational primal simplex (GMP) with Bland's rule on every pivot.
// Slow but free of rounding; used to cross-check the built-in solver.
class ExactRationalBackend final : public LpBackend {
public:
    std::string name() const override { return "exact"; }
    LpOutcome solve(const LinearProgram &lp) const override;
};

class BackendRegistry {
public:
    // Process-wide registry preloaded with "simplex" and "exact".
    static BackendRegistry &global();

    void add(std::shared_ptr<const LpBackend> backend);
    // Throws BackendUnavailable.
    std::shared_ptr<const LpBackend> get(std::string_view name) const;
    bool contains(std::string_view name) const;
    std::vector<std::string> names() const;

private:
    mutable std::mutex mutex_;
    std::vector<std::shared_ptr<const LpBackend>> backends_;
};

inline constexpr const char *kDefaultBackend = "simplex";

// Solves `lp` with the named backend from `registry`.
LpOutcome backend_port(const LinearProgram &lp, std::string_view backend = kDefaultBackend,
                       const BackendRegistry &registry = BackendRegistry::global());

}  // namespace goalrec::lp
