#pragma once

#include <vector>

#include "pbhfs/instance.hpp"
#include "pbhfs/objectives.hpp"
#include "pbhfs/schedule.hpp"

namespace pbhfs {

inline constexpr int kOracleMaxOperations = 8;

// Exact Pareto front by exhaustive enumeration of machine assignments, batch
// partitions and batch orders. Refuses (SizeGuardError) above
// kOracleMaxOperations operations.
std::vector<Objectives> enumerate_pareto_oracle(const Instance& instance);

// Every feasible encoding of the instance, in enumeration order. Same guard.
// Intended for brute-force checks in tests.
std::vector<Schedule> enumerate_schedules(const Instance& instance);

} // namespace pbhfs
