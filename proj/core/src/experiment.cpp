#include "klearn/experiment.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "klearn/generator.hpp"
#include "klearn/numeric.hpp"
#include "klearn/rng.hpp"

namespace klearn {

namespace {

constexpr std::uint64_t kFormulaStream = 1;
constexpr std::uint64_t kSampleStream = 2;
constexpr std::uint64_t kGadgetStream = 3;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto end = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(end - start).count();
}

void require_config(const ExperimentConfig& config) {
  if (config.n_grid.empty()) {
    throw domain_error("experiment: n_grid must be non-empty");
  }
  if (config.trials < 1) throw domain_error("experiment: trials must be >= 1");
  if (config.k < 1 || config.d < 1) {
    throw domain_error("experiment: k and d must be >= 1");
  }
}

}  // namespace

TrialStatus to_trial_status(EstimateStatus status) noexcept {
  switch (status) {
    case EstimateStatus::RootFound: return TrialStatus::RootFound;
    case EstimateStatus::ClampedLow: return TrialStatus::ClampedLow;
    case EstimateStatus::ClampedHigh: return TrialStatus::ClampedHigh;
    case EstimateStatus::NonIdentifiable: return TrialStatus::NonIdentifiable;
  }
  return TrialStatus::NonIdentifiable;
}

std::string to_string(TrialStatus status) {
  switch (status) {
    case TrialStatus::RootFound: return "root-found";
    case TrialStatus::ClampedLow: return "clamped-low";
    case TrialStatus::ClampedHigh: return "clamped-high";
    case TrialStatus::NonIdentifiable: return "non-identifiable";
    case TrialStatus::SampleFailed: return "sample-failed";
  }
  return "unknown";
}

std::string to_string(EstimateStatus status) {
  return to_string(to_trial_status(status));
}

ConsistencyResult run_consistency(const ExperimentConfig& config) {
  require_config(config);
  if (config.sampler == SamplerKind::Exact) {
    for (int n : config.n_grid) {
      if (n > config.cap) {
        throw domain_error(
            "experiment: exact sampler needs every n within the cap");
      }
    }
  }

  ConsistencyResult result;
  for (int n : config.n_grid) {
    const int clause_count = n * config.d / config.k;
    std::vector<double> errors;
    int root_found = 0;
    for (int trial = 0; trial < config.trials; ++trial) {
      const std::uint64_t formula_seed =
          derive_seed(config.seed, n, trial, kFormulaStream);
      const std::uint64_t sample_seed =
          derive_seed(config.seed, n, trial, kSampleStream);
      const auto start = std::chrono::steady_clock::now();
      const Formula formula = random_bounded_formula(
          n, config.k, config.d, clause_count, formula_seed, config.monotone);

      TrialRecord record;
      record.n = n;
      record.trial = trial;
      record.beta_star = config.beta_star;

      bool sampled = false;
      Assignment assignment;
      if (config.sampler == SamplerKind::Exact) {
        const GibbsTable table =
            enumerate_gibbs(formula, config.beta_star, config.cap);
        SampleReport report = sample_exact(table, sample_seed);
        assignment = std::move(report.assignment);
        record.attempts = report.attempts;
        sampled = true;
      } else {
        try {
          SampleReport report = sample_rejection(
              formula, config.beta_star, sample_seed, config.max_attempts);
          assignment = std::move(report.assignment);
          record.attempts = report.attempts;
          sampled = true;
        } catch (const budget_error& e) {
          record.status = TrialStatus::SampleFailed;
          record.attempts = e.attempts();
          record.beta_hat = std::numeric_limits<double>::quiet_NaN();
          record.abs_error = std::numeric_limits<double>::quiet_NaN();
        }
      }

      if (sampled) {
        const EstimateResult est = estimate(
            formula, assignment, EstimatorConfig{config.B, config.epsilon});
        record.status = to_trial_status(est.status);
        record.beta_hat = est.beta_hat;
        record.flippable_total = est.classification.flippable_total();
        if (est.status == EstimateStatus::RootFound) {
          record.abs_error = std::abs(est.beta_hat - config.beta_star);
          errors.push_back(record.abs_error);
          ++root_found;
        } else {
          record.abs_error = std::numeric_limits<double>::quiet_NaN();
        }
      }
      record.wall_time_ms = elapsed_ms(start);
      result.records.push_back(record);
    }
    ConsistencySummary summary;
    summary.n = n;
    summary.trials = config.trials;
    summary.root_found = root_found;
    summary.median_abs_error =
        errors.empty() ? std::numeric_limits<double>::quiet_NaN()
                       : median(errors);
    summary.p90_abs_error = errors.empty()
                                ? std::numeric_limits<double>::quiet_NaN()
                                : percentile(errors, 0.9);
    result.summaries.push_back(summary);
  }
  return result;
}

ImpossibilityResult run_impossibility(const ExperimentConfig& config) {
  require_config(config);
  const int n = config.n_grid.front();
  if (n > config.cap) {
    throw domain_error("experiment: impossibility run needs n within the cap");
  }

  ImpossibilityResult result;
  result.n = n;
  result.k = config.k;
  result.tv_beta1 = config.tv_beta1;
  result.tv_beta2 = config.tv_beta2;
  result.trials = config.trials;

  Formula formula = [&] {
    if (config.gadget == ImpossibilityGadget::Psi2) {
      ReplicaBuild build =
          build_psi2(n, config.k, config.b,
                     derive_seed(config.seed, kGadgetStream), ReplicaMode::Verified,
                     config.cap);
      result.j_star = build.spec.j_star;
      result.verified = build.spec.verified;
      return std::move(build.formula);
    }
    return build_psi0(n, config.k);
  }();
  result.clause_count = formula.clause_count();
  result.max_degree = formula.max_degree();

  const GibbsTable table = enumerate_gibbs(formula, config.beta_star, config.cap);
  result.prob_all_true = table.probability_of(
      Assignment::all_true(static_cast<std::size_t>(n)));
  result.total_variation =
      total_variation(formula, config.tv_beta1, config.tv_beta2, config.cap);

  for (int trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t sample_seed =
        derive_seed(config.seed, n, trial, kSampleStream);
    const SampleReport report = sample_exact(table, sample_seed);
    const EstimateResult est = estimate(formula, report.assignment,
                                        EstimatorConfig{config.B, config.epsilon});
    ++result.status_counts[to_trial_status(est.status)];
  }
  return result;
}

}  // namespace klearn
