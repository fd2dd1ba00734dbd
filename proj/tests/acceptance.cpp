// Acceptance gate: one line per criterion, exit code = number of failures.
// Each criterion carries its own wall-clock budget; exceeding it fails the
// criterion even if the checks pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "klearn/conditions.hpp"
#include "klearn/distribution.hpp"
#include "klearn/estimator.hpp"
#include "klearn/experiment.hpp"
#include "klearn/formula.hpp"
#include "klearn/gadgets.hpp"
#include "klearn/generator.hpp"
#include "klearn/numeric.hpp"
#include "klearn/rng.hpp"
#include "test_support.hpp"

using namespace klearn;

namespace {

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<std::string()> check;  // empty string = pass
};

std::string gadget_structure() {
  const std::vector<std::pair<int, int>> shapes{
      {8, 4}, {12, 4}, {16, 4}, {12, 6}, {18, 6}};
  for (const auto& [n, k] : shapes) {
    const Formula psi0 = build_psi0(n, k);
    if (psi0.clause_count() != static_cast<std::size_t>(n) * (k / 2)) {
      return "clause count off at n=" + std::to_string(n);
    }
    for (const Clause& clause : psi0.clauses()) {
      if (static_cast<int>(clause.literals.size()) != k) {
        return "arity off at n=" + std::to_string(n);
      }
      std::set<int> vars;
      for (const Literal& lit : clause.literals) vars.insert(lit.variable);
      if (static_cast<int>(vars.size()) != k) {
        return "repeated variable at n=" + std::to_string(n);
      }
    }
    for (int v = 0; v < n; ++v) {
      if (psi0.degree(v) != k * k / 2) {
        return "degree off at n=" + std::to_string(n) +
               " v=" + std::to_string(v);
      }
    }
    if (!validate(psi0).empty()) return "validate() flagged the gadget";
    if (!satisfies(psi0, Assignment::all_true(n))) {
      return "all-TRUE rejected at n=" + std::to_string(n);
    }
  }
  return "";
}

std::string gap_exhaustive() {
  for (int n : {8, 12, 16}) {
    const int k = 4;
    const Formula psi0 = build_psi0(n, k);
    const GibbsTable table = enumerate_gibbs(psi0, 0.0);
    const Assignment top = Assignment::all_true(n);
    const int windows = 2 * n / k;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const Assignment a = table.assignment_at(i);
      if (a == top) continue;
      if (n - a.count_true() < 2 * n / k) {
        return "gap violated at n=" + std::to_string(n) + " by " +
               a.to_string();
      }
      for (int l = 0; l < windows; ++l) {
        bool has_false = false;
        for (int batch : {l * (k / 2), ((l + 1) * (k / 2)) % n}) {
          for (int v : batch_indices(batch, n, k)) {
            if (!a[static_cast<std::size_t>(v)]) has_false = true;
          }
        }
        if (!has_false) {
          return "window " + std::to_string(l) + " all-TRUE at n=" +
                 std::to_string(n) + " in " + a.to_string();
        }
      }
    }
  }
  return "";
}

std::string concentration() {
  const Formula psi0 = build_psi0(12, 4);
  const GibbsTable table = enumerate_gibbs(psi0, 4.0 * std::log(2.0));
  const double p = table.probability_of(Assignment::all_true(12));
  const double bound = 1.0 / (1.0 + std::pow(2.0, -12.0));
  if (p < bound) {
    return "Pr[all-TRUE] = " + std::to_string(p) + " < " + std::to_string(bound);
  }
  return "";
}

std::string indistinguishability() {
  const double tv = total_variation(build_psi0(12, 4), 3.0, 4.0);
  if (tv > std::pow(2.0, -10.0)) {
    return "TV = " + std::to_string(tv) + " > 2^-10";
  }
  return "";
}

std::string estimator_equivalence() {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto inst = testsupport::planted_instance(seed, 20);
    const Classification cls = classify(inst.formula, inst.assignment);
    const double beta = inst.beta;

    const double grouped = pseudo_derivative(cls, beta);
    const double direct =
        pseudo_derivative_direct(inst.formula, inst.assignment, beta);
    if (std::abs(grouped - direct) > 1e-12) {
      return "grouped and direct derivatives differ at seed " +
             std::to_string(seed);
    }

    const auto F = [&](double b) {
      return log_pseudo_likelihood(inst.formula, inst.assignment, b);
    };
    const double fd1 = testsupport::central_diff(F, beta, 1e-5);
    if (std::abs(grouped - fd1) > 1e-6 ||
        !testsupport::close_rel(grouped, fd1, 1e-5)) {
      return "first derivative vs finite difference at seed " +
             std::to_string(seed);
    }
    const double d2 = second_derivative(cls, beta);
    const double fd2 = testsupport::second_central_diff(F, beta, 1e-3);
    if (!testsupport::close_rel(d2, fd2, 1e-5)) {
      return "second derivative vs finite difference at seed " +
             std::to_string(seed);
    }

    const EstimatorConfig config{10.0, 1e-6};
    const EstimateResult result = estimate(inst.formula, inst.assignment, config);
    if (result.status == EstimateStatus::RootFound) {
      const auto closed = estimate_closed_form(result.classification);
      if (!closed) return "root without closed form at seed " + std::to_string(seed);
      if (std::abs(result.beta_hat - *closed) > 1e-6) {
        return "bisection off the closed form at seed " + std::to_string(seed);
      }
    }
  }
  return "";
}

std::string second_moment_bound() {
  std::vector<Formula> instances;
  instances.push_back(build_psi0(8, 4));
  instances.push_back(build_psi0(12, 4));
  instances.push_back(build_psi0(16, 4));
  instances.push_back(build_psi1(8, 4));
  instances.push_back(Formula(12, 3, 1, {}));
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const int n = 10 + 2 * static_cast<int>(seed);
    instances.push_back(random_bounded_formula(n, 3, 4, n * 4 / 3, seed));
  }
  for (const Formula& f : instances) {
    const double bound = static_cast<double>(f.clause_arity()) *
                         static_cast<double>(f.degree_cap()) *
                         static_cast<double>(f.variable_count());
    for (double beta : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      const double value = second_moment_diagnostic(f, beta);
      if (!(value >= 0.0) || value > bound + 1e-9) {
        std::ostringstream msg;
        msg << "E[score^2] = " << value << " > " << bound << " at n="
            << f.variable_count() << " beta=" << beta;
        return msg.str();
      }
    }
  }
  return "";
}

std::string second_derivative_identity() {
  CounterRng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    Classification cls;
    cls.flippable_true = static_cast<std::int64_t>(rng.next_below(51));
    cls.flippable_false = static_cast<std::int64_t>(rng.next_below(51));
    cls.stuck_true = static_cast<std::int64_t>(rng.next_below(51));
    cls.stuck_false = static_cast<std::int64_t>(rng.next_below(51));
    for (double beta : {-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0}) {
      const double reference =
          -std::exp(beta) / std::pow(1.0 + std::exp(beta), 2.0) *
          static_cast<double>(cls.flippable_total());
      const double value = second_derivative(cls, beta);
      if (std::abs(value - reference) > 1e-12) {
        return "identity broke at beta=" + std::to_string(beta);
      }
      if (value > 0.0) return "positive second derivative";
    }
  }
  return "";
}

std::string consistency_trend() {
  ExperimentConfig config;
  config.n_grid = {64, 128, 256, 512};
  config.k = 5;
  config.d = 3;
  config.beta_star = 0.5;
  config.B = 2.0;
  config.epsilon = 1e-3;  // below the dyadic default grid, so medians can move
  config.trials = 200;
  config.seed = 0;
  config.sampler = SamplerKind::Rejection;
  const ConsistencyResult result = run_consistency(config);
  if (result.summaries.size() != 4) return "expected 4 summaries";
  std::ostringstream medians;
  for (std::size_t i = 0; i < 4; ++i) {
    medians << (i ? " " : "") << result.summaries[i].median_abs_error;
    if (result.summaries[i].root_found < 100) {
      return "too few identifiable trials at n=" +
             std::to_string(result.summaries[i].n);
    }
  }
  for (std::size_t i = 1; i < 4; ++i) {
    if (!(result.summaries[i].median_abs_error <
          result.summaries[i - 1].median_abs_error)) {
      return "medians not strictly decreasing: " + medians.str();
    }
  }
  if (!(result.summaries[3].median_abs_error <=
        0.6 * result.summaries[0].median_abs_error)) {
    return "decay too shallow: " + medians.str();
  }
  return "";
}

std::string replica_verified() {
  const ReplicaBuild build = build_psi2(12, 4, 2.0, 7);
  if (build.spec.j_star != 16) {
    return "J* = " + std::to_string(build.spec.j_star) + ", expected 16";
  }
  if (!build.spec.verified) return "gap verification did not run";
  const auto mf = min_false(build.formula);
  if (!mf || *mf < 6) return "min FALSE count below ceil(n/b) = 6";
  if (build.formula.max_degree() > 128) {
    return "degree " + std::to_string(build.formula.max_degree()) + " > 128";
  }
  if (!satisfies(build.formula, Assignment::all_true(12))) {
    return "all-TRUE rejected";
  }
  return "";
}

std::string condition_identities() {
  for (int k : {4, 6, 10}) {
    for (double beta = 1.01; beta <= 30.0; beta += 0.49) {
      const double via_alpha = impossibility_alpha(1, k, alpha_of_beta(beta)).rhs;
      const double direct = impossibility_exp_degree(1, k, beta).rhs;
      if (std::abs(via_alpha - direct) > 1e-10 * direct) {
        return "threshold routes disagree at k=" + std::to_string(k) +
               " beta=" + std::to_string(beta);
      }
    }
  }
  for (double beta : {1.01, 1.1, 2.0, 5.0, 10.0, 20.0}) {
    if (!alpha_condition(alpha_of_beta(beta), beta)) {
      return "canonical alpha misses its gap at beta=" + std::to_string(beta);
    }
  }
  for (int i = 1; i <= 1000; ++i) {
    const double x = static_cast<double>(i) / 1001.0;
    if (!(taylor_identity_check(x) < 1.0)) {
      return "series bound reached 1 at x=" + std::to_string(x);
    }
  }
  return "";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"gadget-structure", 1.0, gadget_structure},
      {"gap-exhaustive", 10.0, gap_exhaustive},
      {"concentration", 5.0, concentration},
      {"indistinguishability", 5.0, indistinguishability},
      {"estimator-equivalence", 30.0, estimator_equivalence},
      {"second-moment-bound", 60.0, second_moment_bound},
      {"second-derivative-identity", 10.0, second_derivative_identity},
      {"consistency-trend", 300.0, consistency_trend},
      {"replica-verified", 30.0, replica_verified},
      {"condition-identities", 1.0, condition_identities},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = criteria[i].check();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_budget = elapsed <= criteria[i].budget_seconds;
    const bool pass = detail.empty() && in_budget;
    if (!pass) ++failures;
    std::printf("%s  %2zu %-28s %8.3fs (budget %.0fs)%s%s\n",
                pass ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(),
                elapsed, criteria[i].budget_seconds,
                detail.empty() ? "" : "  ", detail.c_str());
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  } else {
    std::printf("all %zu criteria passed\n", criteria.size());
  }
  return failures;
}
