#include "klearn/distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "klearn/numeric.hpp"

namespace klearn {

namespace {

// Per-clause bit masks over the low n bits, with variable 0 at the most
// significant position to match Assignment::from_mask.
struct ClauseMask {
  std::uint32_t positive = 0;
  std::uint32_t negative = 0;
};

std::vector<ClauseMask> clause_masks(const Formula& f) {
  const int n = f.variable_count();
  std::vector<ClauseMask> out;
  out.reserve(f.clause_count());
  for (const Clause& clause : f.clauses()) {
    ClauseMask cm;
    for (const Literal& lit : clause.literals) {
      const std::uint32_t bit = 1u << (n - 1 - lit.variable);
      if (lit.negated) {
        cm.negative |= bit;
      } else {
        cm.positive |= bit;
      }
    }
    out.push_back(cm);
  }
  return out;
}

inline bool mask_satisfies(std::uint32_t mask,
                           const std::vector<ClauseMask>& cms) {
  for (const ClauseMask& cm : cms) {
    if ((mask & cm.positive) == 0 && (~mask & cm.negative) == 0) return false;
  }
  return true;
}

void require_cap(const Formula& f, int cap) {
  if (cap < 0 || cap > 32) throw domain_error("enumeration cap must be in [0, 32]");
  if (f.variable_count() > cap) {
    throw domain_error("formula exceeds enumeration cap of " +
                       std::to_string(cap) + " variables");
  }
}

// log Z from the number of satisfying assignments at each TRUE count.
double log_partition_from_counts(const std::vector<std::uint64_t>& counts,
                                 double beta) {
  std::vector<double> terms;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (counts[m] > 0) {
      terms.push_back(beta * static_cast<double>(m) +
                      std::log(static_cast<double>(counts[m])));
    }
  }
  return log_sum_exp(terms);
}

}  // namespace

ProductMeasure ProductMeasure::for_beta(int n, double beta) {
  if (n < 0) throw domain_error("product measure: negative n");
  const double p = sigmoid(beta);
  if (!(p > 0.0) || !(p < 1.0)) {
    throw domain_error("product measure: p_true degenerates at this beta");
  }
  return ProductMeasure{n, p};
}

Assignment ProductMeasure::sample(CounterRng& rng) const {
  std::vector<bool> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    values[static_cast<std::size_t>(i)] = rng.next_bernoulli(p_true);
  }
  return Assignment(std::move(values));
}

Assignment GibbsTable::assignment_at(std::size_t idx) const {
  return Assignment::from_mask(masks_[idx],
                               static_cast<std::size_t>(formula_.variable_count()));
}

double GibbsTable::log_weight_at(std::size_t idx) const {
  return beta_ * static_cast<double>(std::popcount(masks_[idx]));
}

double GibbsTable::probability_at(std::size_t idx) const {
  return std::exp(log_weight_at(idx) - log_partition_);
}

double GibbsTable::probability_of(const Assignment& assignment) const {
  if (static_cast<int>(assignment.size()) != formula_.variable_count()) {
    throw domain_error("probability_of: assignment length mismatch");
  }
  const std::uint32_t mask = assignment.to_mask();
  if (!std::binary_search(masks_.begin(), masks_.end(), mask)) return 0.0;
  return std::exp(beta_ * static_cast<double>(std::popcount(mask)) -
                  log_partition_);
}

GibbsTable enumerate_gibbs(const Formula& formula, double beta, int cap) {
  require_cap(formula, cap);
  const int n = formula.variable_count();
  const auto cms = clause_masks(formula);

  GibbsTable table(formula);
  table.beta_ = beta;
  table.counts_by_true_.assign(static_cast<std::size_t>(n) + 1, 0);
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto m32 = static_cast<std::uint32_t>(mask);
    if (mask_satisfies(m32, cms)) {
      table.masks_.push_back(m32);
      ++table.counts_by_true_[static_cast<std::size_t>(std::popcount(m32))];
    }
  }
  if (table.masks_.empty()) {
    throw unsat_error("enumerate_gibbs: formula is unsatisfiable");
  }
  table.log_partition_ = log_partition_from_counts(table.counts_by_true_, beta);

  // Counting sort by TRUE count; within a bucket masks stay ascending.
  table.offsets_by_true_.assign(static_cast<std::size_t>(n) + 2, 0);
  for (std::size_t m = 0; m <= static_cast<std::size_t>(n); ++m) {
    table.offsets_by_true_[m + 1] =
        table.offsets_by_true_[m] + table.counts_by_true_[m];
  }
  table.masks_by_true_.resize(table.masks_.size());
  std::vector<std::size_t> cursor(table.offsets_by_true_.begin(),
                                  table.offsets_by_true_.end() - 1);
  for (std::uint32_t mask : table.masks_) {
    const auto m = static_cast<std::size_t>(std::popcount(mask));
    table.masks_by_true_[cursor[m]++] = mask;
  }
  return table;
}

SampleReport sample_exact(const GibbsTable& table, std::uint64_t seed) {
  CounterRng rng(seed);
  const auto& counts = table.counts_by_true_;
  const double u = rng.next_double();
  double cum = 0.0;
  std::size_t chosen = 0;
  bool found = false;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (counts[m] == 0) continue;
    chosen = m;  // falls through to the last nonempty bucket on rounding
    cum += static_cast<double>(counts[m]) *
           std::exp(table.beta_ * static_cast<double>(m) - table.log_partition_);
    if (u < cum) {
      found = true;
      break;
    }
  }
  (void)found;
  const std::uint64_t idx = rng.next_below(counts[chosen]);
  const std::uint32_t mask =
      table.masks_by_true_[table.offsets_by_true_[chosen] + idx];
  return SampleReport{
      Assignment::from_mask(mask, static_cast<std::size_t>(
                                      table.formula_.variable_count())),
      1, SampleMethod::ExactEnumeration};
}

SampleReport sample_rejection(const Formula& formula, double beta,
                              std::uint64_t seed, long max_attempts) {
  if (max_attempts < 1) {
    throw domain_error("sample_rejection: max_attempts must be positive");
  }
  const ProductMeasure proposal =
      ProductMeasure::for_beta(formula.variable_count(), beta);
  CounterRng rng(seed);
  for (long attempt = 1; attempt <= max_attempts; ++attempt) {
    Assignment candidate = proposal.sample(rng);
    if (satisfies(formula, candidate)) {
      return SampleReport{std::move(candidate), attempt, SampleMethod::Rejection};
    }
  }
  throw budget_error("sample_rejection: no satisfying proposal within budget",
                     max_attempts);
}

std::optional<int> min_false(const Formula& formula, int cap) {
  require_cap(formula, cap);
  const int n = formula.variable_count();
  const auto cms = clause_masks(formula);
  const std::uint64_t total = 1ull << n;
  const std::uint64_t all_true = total - 1;
  int best = n + 1;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (mask == all_true) continue;
    const auto m32 = static_cast<std::uint32_t>(mask);
    if (mask_satisfies(m32, cms)) {
      best = std::min(best, n - std::popcount(m32));
    }
  }
  if (best > n) return std::nullopt;
  return best;
}

bool verify_gap(const Formula& formula, int threshold, int cap) {
  if (!satisfies(formula,
                 Assignment::all_true(
                     static_cast<std::size_t>(formula.variable_count())))) {
    return false;
  }
  const auto mf = min_false(formula, cap);
  return !mf.has_value() || *mf >= threshold;
}

double total_variation(const Formula& formula, double beta1, double beta2,
                       int cap) {
  require_cap(formula, cap);
  const int n = formula.variable_count();
  const auto cms = clause_masks(formula);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  const std::uint64_t total = 1ull << n;
  std::uint64_t satisfying = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto m32 = static_cast<std::uint32_t>(mask);
    if (mask_satisfies(m32, cms)) {
      ++counts[static_cast<std::size_t>(std::popcount(m32))];
      ++satisfying;
    }
  }
  if (satisfying == 0) {
    throw unsat_error("total_variation: formula is unsatisfiable");
  }
  const double log_z1 = log_partition_from_counts(counts, beta1);
  const double log_z2 = log_partition_from_counts(counts, beta2);
  double tv = 0.0;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (counts[m] == 0) continue;
    const double p1 = std::exp(beta1 * static_cast<double>(m) - log_z1);
    const double p2 = std::exp(beta2 * static_cast<double>(m) - log_z2);
    tv += static_cast<double>(counts[m]) * std::abs(p1 - p2);
  }
  return 0.5 * tv;
}

}  // namespace klearn
