#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "klearn/formula.hpp"
#include "klearn/rng.hpp"

namespace klearn {

/// Largest n accepted by the exact-enumeration routines by default.
constexpr int kDefaultEnumerationCap = 26;

enum class SampleMethod { ExactEnumeration, Rejection };

struct SampleReport {
  Assignment assignment;
  long attempts = 1;
  SampleMethod method = SampleMethod::ExactEnumeration;
};

/// Independent per-variable measure with P[TRUE] = p_true; the rejection
/// sampler's proposal. For inverse temperature beta, p_true = e^b/(1+e^b).
struct ProductMeasure {
  int n = 0;
  double p_true = 0.5;

  static ProductMeasure for_beta(int n, double beta);

  Assignment sample(CounterRng& rng) const;
};

/// Exact tabulation of the Gibbs distribution over satisfying assignments:
/// Pr[s] = e^{beta * count_true(s)} / Z. Entries are held in lexicographic
/// order over assignments; log-weights and the log-partition are kept in
/// log-space. Immutable after construction.
class GibbsTable {
 public:
  const Formula& formula() const noexcept { return formula_; }
  double beta() const noexcept { return beta_; }

  /// Number of satisfying assignments (always positive).
  std::size_t size() const noexcept { return masks_.size(); }

  double log_partition() const noexcept { return log_partition_; }

  Assignment assignment_at(std::size_t idx) const;
  double log_weight_at(std::size_t idx) const;
  double probability_at(std::size_t idx) const;

  /// Probability of the given assignment; 0 when it does not satisfy.
  double probability_of(const Assignment& assignment) const;

  /// counts_by_true()[m] = number of satisfying assignments with m TRUEs.
  const std::vector<std::uint64_t>& counts_by_true() const noexcept {
    return counts_by_true_;
  }

 private:
  friend GibbsTable enumerate_gibbs(const Formula&, double, int);
  friend SampleReport sample_exact(const GibbsTable&, std::uint64_t);

  Formula formula_;
  double beta_ = 0.0;
  std::vector<std::uint32_t> masks_;          // lexicographic order
  std::vector<std::uint32_t> masks_by_true_;  // grouped by count_true
  std::vector<std::size_t> offsets_by_true_;  // size n + 2
  std::vector<std::uint64_t> counts_by_true_;
  double log_partition_ = 0.0;

  explicit GibbsTable(Formula formula) : formula_(std::move(formula)) {}
};

/// Enumerates all satisfying assignments (requires n <= cap) and computes
/// the partition function by max-shifted log-sum-exp. Throws unsat_error
/// when no assignment satisfies the formula.
GibbsTable enumerate_gibbs(const Formula& formula, double beta,
                           int cap = kDefaultEnumerationCap);

/// One draw from the tabulated distribution; probabilities exactly
/// proportional to e^{beta * m}. Deterministic given the seed.
SampleReport sample_exact(const GibbsTable& table, std::uint64_t seed);

/// Draws proposals from ProductMeasure::for_beta until one satisfies the
/// formula; the accepted sample follows the exact conditional law. Throws
/// budget_error (carrying the attempt count) when max_attempts run out.
SampleReport sample_rejection(const Formula& formula, double beta,
                              std::uint64_t seed, long max_attempts);

/// Minimum number of FALSE variables over satisfying assignments other
/// than all-TRUE; nullopt when no such assignment exists.
std::optional<int> min_false(const Formula& formula,
                             int cap = kDefaultEnumerationCap);

/// TRUE iff all-TRUE satisfies the formula and every other satisfying
/// assignment has at least `threshold` FALSE variables.
bool verify_gap(const Formula& formula, int threshold,
                int cap = kDefaultEnumerationCap);

/// Exact total variation distance between the Gibbs distributions at two
/// inverse temperatures on the same formula.
double total_variation(const Formula& formula, double beta1, double beta2,
                       int cap = kDefaultEnumerationCap);

}  // namespace klearn
