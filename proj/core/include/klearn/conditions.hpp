#pragma once

#include <string>

namespace klearn {

/// One checked inequality. `holds` is decided in log-space so it stays
/// meaningful when rhs overflows a double; margin = rhs - lhs for
/// upper-bound conditions and lhs - rhs for lower-bound ones, so a
/// non-negative margin always means the condition holds.
struct ConditionReport {
  std::string name;
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

/// Identifiability regime: d <= (1 / (e^3 sqrt(k))) * (1 + e^{-B})^{k/2}.
/// B = 0 is allowed and gives the widest right side. Requires d, k >= 1.
ConditionReport learnable_condition(int d, int k, double B);

/// Hardness regime with degree exponential in k:
/// d >= k^3 * (1 + e / (e^{|beta|} - e))^{k/2}. Requires |beta| > 1 and
/// k even, k >= 4.
ConditionReport impossibility_exp_degree(int d, int k, double beta_star);

/// Hardness regime with quadratic degree: d >= k^2/2 and |beta| >= k ln 2.
/// Requires k even, k >= 4.
ConditionReport impossibility_quadratic_degree(int d, int k, double beta_star);

/// Hardness regime parameterized by alpha in (0, 1):
/// d >= k^3 * alpha^{-k/2}. Requires k even, k >= 4.
ConditionReport impossibility_alpha(int d, int k, double alpha);

/// TRUE iff |beta| + (alpha / (1 - alpha)) ln(alpha) + ln(1 - alpha) > 0,
/// i.e. |beta| clears the gap function at this alpha. alpha in (0, 1).
bool alpha_condition(double alpha, double beta);

/// The canonical alpha choice 1 - e^{1 - beta}, valid for beta > 1; always
/// satisfies alpha_condition at that beta.
double alpha_of_beta(double beta);

/// Evaluates (1 - 1/x) * ln(1 - x) for x in (0, 1). Equals
/// 1 - sum_{j>=1} x^j / (j (j+1)), hence always below 1.
double taylor_identity_check(double x);

/// Local-lemma regime at flip bias p = e^{|beta|} / (1 + e^{|beta|}):
/// p^k <= x (1 - x)^{d k} with x = 1 / (d^2 k + 1). Requires d, k >= 3.
ConditionReport lll_condition_check(int d, int k, double beta);

}  // namespace klearn
