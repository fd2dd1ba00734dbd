#pragma once

#include <cstdint>

#include "klearn/formula.hpp"

namespace klearn {

/// Draws clause_count clauses of k distinct variables chosen uniformly
/// among variables still under the degree cap d, polarities uniform
/// (all positive when monotone). Deterministic given the seed. Requires
/// clause_count * k <= n * d; throws budget_error if the bounded restart
/// budget is exhausted before a feasible draw completes.
Formula random_bounded_formula(int n, int k, int d, int clause_count,
                               std::uint64_t seed, bool monotone = false);

}  // namespace klearn
