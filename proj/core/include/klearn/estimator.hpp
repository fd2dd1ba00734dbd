#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "klearn/distribution.hpp"
#include "klearn/formula.hpp"

namespace klearn {

/// Per-variable state under a satisfying assignment: flippable iff
/// toggling that single variable keeps the formula satisfied; True/False
/// records the variable's current value.
enum class VarCategory : std::uint8_t {
  FlippableTrue,
  FlippableFalse,
  StuckTrue,
  StuckFalse,
};

/// Result of classify(). Counts sum to n, and
/// flippable_true + stuck_true = count_true(assignment).
struct Classification {
  std::int64_t flippable_true = 0;
  std::int64_t flippable_false = 0;
  std::int64_t stuck_true = 0;
  std::int64_t stuck_false = 0;
  std::vector<VarCategory> per_variable;

  std::int64_t flippable_total() const noexcept {
    return flippable_true + flippable_false;
  }
  std::int64_t true_count() const noexcept {
    return flippable_true + stuck_true;
  }
};

struct EstimatorConfig {
  /// Half-width of the prior parameter range; the search runs on [-2B, 2B].
  double B = 10.0;
  /// Bisection stopping width; defaults to n^{-1/2} when unset.
  std::optional<double> epsilon;
};

enum class EstimateStatus : std::uint8_t {
  RootFound,
  ClampedLow,
  ClampedHigh,
  NonIdentifiable,
};

struct EstimateResult {
  double beta_hat = 0.0;
  EstimateStatus status = EstimateStatus::RootFound;
  int iterations = 0;
  Classification classification;
};

/// Labels every variable; linear in formula size (each flip recheck only
/// touches the clauses containing that variable). Throws domain_error when
/// the assignment does not satisfy the formula.
Classification classify(const Formula& formula, const Assignment& assignment);

/// d/d(beta) of the log pseudo-likelihood in grouped form:
/// flippable_true - e^b/(1+e^b) * flippable_total. O(1) given counts, and
/// strictly decreasing in beta while any variable is flippable.
double pseudo_derivative(const Classification& classification, double beta);

/// Same derivative evaluated as the ungrouped per-variable sum, with every
/// flip indicator recomputed by full satisfiability checks. Quadratic-time
/// reference implementation kept as an independent oracle.
double pseudo_derivative_direct(const Formula& formula,
                                const Assignment& assignment, double beta);

/// Log pseudo-likelihood F(beta; assignment) = beta * m - sum over
/// variables of ln(e^beta * [TRUE works] + [FALSE works]).
double log_pseudo_likelihood(const Formula& formula,
                             const Assignment& assignment, double beta);

/// d^2F/d(beta)^2 = -e^b/(1+e^b)^2 * flippable_total; never positive.
double second_derivative(const Classification& classification, double beta);

/// Maximum pseudo-likelihood estimate by bisection on [-2B, 2B].
/// No flippable variable: NonIdentifiable with beta_hat = 0. Derivative
/// still positive at +2B (resp. negative at -2B): ClampedHigh (ClampedLow)
/// at the boundary. Otherwise bisects until the bracket is narrower than
/// epsilon and reports the midpoint as RootFound.
EstimateResult estimate(const Formula& formula, const Assignment& assignment,
                        const EstimatorConfig& config);

/// ln(flippable_true / flippable_false), the exact stationary point, when
/// both counts are positive; nullopt otherwise.
std::optional<double> estimate_closed_form(const Classification& classification);

/// Exact E[(dF/d(beta))^2] under the Gibbs distribution at beta, by full
/// enumeration. Bounded by k * d * n for well-formed formulas.
double second_moment_diagnostic(const Formula& formula, double beta,
                                int cap = kDefaultEnumerationCap);

}  // namespace klearn
