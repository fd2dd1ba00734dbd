#include "klearn/conditions.hpp"

#include <cmath>

#include "klearn/errors.hpp"
#include "klearn/numeric.hpp"

namespace klearn {

namespace {

void require_even_k(int k) {
  if (k < 4 || k % 2 != 0) {
    throw domain_error("condition: k must be even and at least 4");
  }
}

// Report for conditions of the form d >= rhs, with rhs given in log-space.
ConditionReport lower_bound_report(std::string name, int d, double log_rhs) {
  ConditionReport report;
  report.name = std::move(name);
  report.lhs = static_cast<double>(d);
  report.rhs = std::exp(log_rhs);
  report.holds = std::log(static_cast<double>(d)) >= log_rhs;
  report.margin = report.lhs - report.rhs;
  return report;
}

}  // namespace

ConditionReport learnable_condition(int d, int k, double B) {
  if (d < 1 || k < 1) throw domain_error("learnable_condition: d, k must be >= 1");
  if (B < 0.0) throw domain_error("learnable_condition: B must be >= 0");
  const double log_rhs = -3.0 - 0.5 * std::log(static_cast<double>(k)) +
                         0.5 * static_cast<double>(k) * std::log1p(std::exp(-B));
  ConditionReport report;
  report.name = "learnable";
  report.lhs = static_cast<double>(d);
  report.rhs = std::exp(log_rhs);
  report.holds = std::log(static_cast<double>(d)) <= log_rhs;
  report.margin = report.rhs - report.lhs;
  return report;
}

ConditionReport impossibility_exp_degree(int d, int k, double beta_star) {
  require_even_k(k);
  if (d < 1) throw domain_error("impossibility_exp_degree: d must be >= 1");
  const double b = std::abs(beta_star);
  if (!(b > 1.0)) {
    throw domain_error("impossibility_exp_degree: |beta_star| must exceed 1");
  }
  // e^{|b|} - e > 0 since |b| > 1.
  const double ratio = std::exp(1.0) / (std::exp(b) - std::exp(1.0));
  const double log_rhs = 3.0 * std::log(static_cast<double>(k)) +
                         0.5 * static_cast<double>(k) * std::log1p(ratio);
  return lower_bound_report("impossibility-exp-degree", d, log_rhs);
}

ConditionReport impossibility_quadratic_degree(int d, int k, double beta_star) {
  require_even_k(k);
  if (d < 1) {
    throw domain_error("impossibility_quadratic_degree: d must be >= 1");
  }
  ConditionReport report;
  report.name = "impossibility-quadratic-degree";
  report.lhs = static_cast<double>(d);
  report.rhs = static_cast<double>(k) * static_cast<double>(k) / 2.0;
  const bool degree_ok = report.lhs >= report.rhs;
  const bool beta_ok =
      std::abs(beta_star) >= static_cast<double>(k) * std::log(2.0);
  report.holds = degree_ok && beta_ok;
  report.margin = report.lhs - report.rhs;
  return report;
}

ConditionReport impossibility_alpha(int d, int k, double alpha) {
  require_even_k(k);
  if (d < 1) throw domain_error("impossibility_alpha: d must be >= 1");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw domain_error("impossibility_alpha: alpha must lie in (0, 1)");
  }
  const double log_rhs = 3.0 * std::log(static_cast<double>(k)) -
                         0.5 * static_cast<double>(k) * std::log(alpha);
  return lower_bound_report("impossibility-alpha", d, log_rhs);
}

bool alpha_condition(double alpha, double beta) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw domain_error("alpha_condition: alpha must lie in (0, 1)");
  }
  return std::abs(beta) + alpha / (1.0 - alpha) * std::log(alpha) +
             std::log1p(-alpha) >
         0.0;
}

double alpha_of_beta(double beta) {
  if (!(beta > 1.0)) throw domain_error("alpha_of_beta: beta must exceed 1");
  return -std::expm1(1.0 - beta);
}

double taylor_identity_check(double x) {
  if (!(x > 0.0) || !(x < 1.0)) {
    throw domain_error("taylor_identity_check: x must lie in (0, 1)");
  }
  return (1.0 - 1.0 / x) * std::log1p(-x);
}

ConditionReport lll_condition_check(int d, int k, double beta) {
  if (d < 3 || k < 3) {
    throw domain_error("lll_condition_check: d, k must be >= 3");
  }
  const double p = sigmoid(std::abs(beta));
  const double x =
      1.0 / (static_cast<double>(d) * static_cast<double>(d) *
                 static_cast<double>(k) +
             1.0);
  const double log_lhs = static_cast<double>(k) * std::log(p);
  const double log_rhs = std::log(x) + static_cast<double>(d) *
                                           static_cast<double>(k) *
                                           std::log1p(-x);
  ConditionReport report;
  report.name = "lll";
  report.lhs = std::exp(log_lhs);
  report.rhs = std::exp(log_rhs);
  report.holds = log_lhs <= log_rhs;
  report.margin = report.rhs - report.lhs;
  return report;
}

}  // namespace klearn
