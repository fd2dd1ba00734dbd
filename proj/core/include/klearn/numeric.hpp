#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "klearn/errors.hpp"

namespace klearn {

/// e^x / (1 + e^x), evaluated without overflow for any finite x.
inline double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// ln(1 + e^x), evaluated without overflow for any finite x.
inline double softplus(double x) noexcept {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

/// ln(sum of e^{v}) over terms, shifted by the maximum for stability.
inline double log_sum_exp(std::span<const double> terms) {
  if (terms.empty()) throw domain_error("log_sum_exp: empty term list");
  const double m = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return m + std::log(acc);
}

/// Linear-interpolation percentile, q in [0, 1]. Sorts a copy.
inline double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw domain_error("percentile: empty sample");
  if (q < 0.0 || q > 1.0) throw domain_error("percentile: q outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

inline double median(std::vector<double> values) {
  return percentile(std::move(values), 0.5);
}

}  // namespace klearn
