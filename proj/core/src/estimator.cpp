#include "klearn/estimator.hpp"

#include <cmath>

#include "klearn/numeric.hpp"

namespace klearn {

namespace {

// TRUE iff the clause stays satisfied when variable `flip_var` is toggled.
bool clause_holds_with_flip(const Clause& clause, const Assignment& a,
                            int flip_var) {
  for (const Literal& lit : clause.literals) {
    const bool value = lit.variable == flip_var
                           ? !a[static_cast<std::size_t>(lit.variable)]
                           : a[static_cast<std::size_t>(lit.variable)];
    if (value != lit.negated) return true;
  }
  return false;
}

constexpr int kMaxBisectionIterations = 200;

}  // namespace

Classification classify(const Formula& formula, const Assignment& assignment) {
  if (!satisfies(formula, assignment)) {
    throw domain_error("classify: assignment does not satisfy the formula");
  }
  const int n = formula.variable_count();
  Classification cls;
  cls.per_variable.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    bool flip_ok = true;
    for (int c : formula.incidence(v)) {
      if (!clause_holds_with_flip(formula.clauses()[static_cast<std::size_t>(c)],
                                  assignment, v)) {
        flip_ok = false;
        break;
      }
    }
    const bool value = assignment[static_cast<std::size_t>(v)];
    VarCategory cat;
    if (flip_ok) {
      cat = value ? VarCategory::FlippableTrue : VarCategory::FlippableFalse;
      ++(value ? cls.flippable_true : cls.flippable_false);
    } else {
      cat = value ? VarCategory::StuckTrue : VarCategory::StuckFalse;
      ++(value ? cls.stuck_true : cls.stuck_false);
    }
    cls.per_variable.push_back(cat);
  }
  return cls;
}

double pseudo_derivative(const Classification& classification, double beta) {
  const double p = sigmoid(beta);
  return static_cast<double>(classification.flippable_true) -
         p * static_cast<double>(classification.flippable_total());
}

double pseudo_derivative_direct(const Formula& formula,
                                const Assignment& assignment, double beta) {
  if (!satisfies(formula, assignment)) {
    throw domain_error("pseudo_derivative_direct: unsatisfying assignment");
  }
  const int n = formula.variable_count();
  const double p = sigmoid(beta);
  double sum = 0.0;
  for (int v = 0; v < n; ++v) {
    // Indicators recomputed from scratch with full satisfiability checks.
    const Assignment with_true =
        assignment[static_cast<std::size_t>(v)] ? assignment
                                                : assignment.flipped(
                                                      static_cast<std::size_t>(v));
    const Assignment with_false =
        assignment[static_cast<std::size_t>(v)]
            ? assignment.flipped(static_cast<std::size_t>(v))
            : assignment;
    const bool true_works = satisfies(formula, with_true);
    const bool false_works = satisfies(formula, with_false);
    // S_v = e^b * [T] / (e^b * [T] + [F]), written by cases for stability.
    double s = 0.0;
    if (true_works) s = false_works ? p : 1.0;
    sum += s;
  }
  return static_cast<double>(assignment.count_true()) - sum;
}

double log_pseudo_likelihood(const Formula& formula,
                             const Assignment& assignment, double beta) {
  const Classification cls = classify(formula, assignment);
  const double m = static_cast<double>(cls.true_count());
  return beta * m - static_cast<double>(cls.stuck_true) * beta -
         static_cast<double>(cls.flippable_total()) * softplus(beta);
}

double second_derivative(const Classification& classification, double beta) {
  const double p = sigmoid(beta);
  return -p * (1.0 - p) * static_cast<double>(classification.flippable_total());
}

EstimateResult estimate(const Formula& formula, const Assignment& assignment,
                        const EstimatorConfig& config) {
  if (!(config.B > 0.0)) throw domain_error("estimate: B must be positive");
  if (config.epsilon && !(*config.epsilon > 0.0)) {
    throw domain_error("estimate: epsilon must be positive");
  }
  Classification cls = classify(formula, assignment);
  if (cls.flippable_total() == 0) {
    return EstimateResult{0.0, EstimateStatus::NonIdentifiable, 0,
                          std::move(cls)};
  }
  const int n = formula.variable_count();
  const double eps = config.epsilon.value_or(
      1.0 / std::sqrt(static_cast<double>(n > 0 ? n : 1)));
  double lo = -2.0 * config.B;
  double hi = 2.0 * config.B;
  if (pseudo_derivative(cls, hi) > 0.0) {
    return EstimateResult{hi, EstimateStatus::ClampedHigh, 0, std::move(cls)};
  }
  if (pseudo_derivative(cls, lo) < 0.0) {
    return EstimateResult{lo, EstimateStatus::ClampedLow, 0, std::move(cls)};
  }
  int iterations = 0;
  while (hi - lo > eps && iterations < kMaxBisectionIterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at float resolution
    if (pseudo_derivative(cls, mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iterations;
  }
  return EstimateResult{0.5 * (lo + hi), EstimateStatus::RootFound, iterations,
                        std::move(cls)};
}

std::optional<double> estimate_closed_form(const Classification& classification) {
  if (classification.flippable_true <= 0 || classification.flippable_false <= 0) {
    return std::nullopt;
  }
  return std::log(static_cast<double>(classification.flippable_true) /
                  static_cast<double>(classification.flippable_false));
}

double second_moment_diagnostic(const Formula& formula, double beta, int cap) {
  const GibbsTable table = enumerate_gibbs(formula, beta, cap);
  double acc = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Assignment a = table.assignment_at(i);
    const Classification cls = classify(formula, a);
    const double dv = pseudo_derivative(cls, beta);
    acc += std::exp(table.log_weight_at(i) - table.log_partition()) * dv * dv;
  }
  return acc;
}

}  // namespace klearn
