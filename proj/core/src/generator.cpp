#include "klearn/generator.hpp"

#include <algorithm>

#include "klearn/rng.hpp"

namespace klearn {

namespace {
constexpr int kRestartBudget = 64;
}

Formula random_bounded_formula(int n, int k, int d, int clause_count,
                               std::uint64_t seed, bool monotone) {
  if (n < 1 || k < 1 || d < 1 || clause_count < 0) {
    throw domain_error("random_bounded_formula: parameters must be positive");
  }
  if (k > n) throw domain_error("random_bounded_formula: k exceeds n");
  if (static_cast<long long>(clause_count) * k > static_cast<long long>(n) * d) {
    throw domain_error("random_bounded_formula: clause_count * k exceeds n * d");
  }

  for (int restart = 0; restart < kRestartBudget; ++restart) {
    CounterRng rng(derive_seed(seed, restart));
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    std::vector<Clause> clauses;
    clauses.reserve(static_cast<std::size_t>(clause_count));
    bool stalled = false;
    for (int c = 0; c < clause_count && !stalled; ++c) {
      std::vector<int> available;
      available.reserve(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) {
        if (degree[static_cast<std::size_t>(v)] < d) available.push_back(v);
      }
      if (static_cast<int>(available.size()) < k) {
        stalled = true;
        break;
      }
      // Partial Fisher-Yates: the first k entries form a uniform k-subset.
      for (int j = 0; j < k; ++j) {
        const auto r = j + static_cast<int>(rng.next_below(available.size() - static_cast<std::size_t>(j)));
        std::swap(available[static_cast<std::size_t>(j)], available[static_cast<std::size_t>(r)]);
      }
      Clause clause;
      clause.literals.reserve(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) {
        const int v = available[static_cast<std::size_t>(j)];
        const bool negated = monotone ? false : (rng.next_u64() & 1u) != 0;
        clause.literals.push_back({v, negated});
        ++degree[static_cast<std::size_t>(v)];
      }
      clauses.push_back(std::move(clause));
    }
    if (!stalled) return Formula(n, k, d, std::move(clauses));
  }
  throw budget_error("random_bounded_formula: restart budget exhausted",
                     kRestartBudget);
}

}  // namespace klearn
