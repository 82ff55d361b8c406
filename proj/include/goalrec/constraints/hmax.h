#pragma once

#include "goalrec/model/task.h"

#include <boost/rational.hpp>

#include <optional>
#include <span>
#include <vector>

namespace goalrec::constraints {

using Rational = boost::rational<long long>;

std::vector<Rational> unit_costs(const model::PlanningTask &task);
std::vector<Rational> task_costs(const model::PlanningTask &task);

// h_max value of every fact from `from`; nullopt marks facts unreachable in
// the delete relaxation.
std::vector<std::optional<Rational>> hmax_fact_values(const model::PlanningTask &task,
                                                      const model::FactSet &from,
                                                      std::span<const Rational> costs);

// max over goal facts of their h_max value; nullopt means infinity.
std::optional<Rational> hmax(const model::PlanningTask &task, const model::FactSet &from,
                             const model::FactSet &goal, std::span<const Rational> costs);

}  // namespace goalrec::constraints
