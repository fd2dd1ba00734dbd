#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klearn/distribution.hpp"
#include "klearn/estimator.hpp"
#include "klearn/gadgets.hpp"

namespace klearn {

enum class SamplerKind : std::uint8_t { Exact, Rejection };

enum class ImpossibilityGadget : std::uint8_t { Psi0, Psi2 };

/// Shared configuration of the experiment harness. Per-trial randomness is
/// split off the master seed by a stable hash of (seed, n, trial-index), so
/// any single trial can be reproduced in isolation.
struct ExperimentConfig {
  std::vector<int> n_grid;
  int k = 5;
  int d = 3;
  double beta_star = 0.5;
  double B = 2.0;
  /// Bisection tolerance passed through to the estimator; unset keeps the
  /// estimator default n^{-1/2}, which quantizes beta_hat to a coarse
  /// dyadic grid. Trend studies should pin something finer.
  std::optional<double> epsilon;
  int trials = 200;
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::Rejection;
  std::string output_path;      // empty: keep records in memory only
  bool monotone = true;         // all-positive clauses in the random family
  long max_attempts = 100000;   // rejection budget per trial
  int cap = kDefaultEnumerationCap;

  // Additional knobs for the impossibility run.
  ImpossibilityGadget gadget = ImpossibilityGadget::Psi0;
  double b = 2.0;           // replica parameter when gadget = Psi2
  double tv_beta1 = 3.0;    // the two temperatures compared by TV
  double tv_beta2 = 4.0;
};

enum class TrialStatus : std::uint8_t {
  RootFound,
  ClampedLow,
  ClampedHigh,
  NonIdentifiable,
  SampleFailed,
};

TrialStatus to_trial_status(EstimateStatus status) noexcept;
std::string to_string(TrialStatus status);
std::string to_string(EstimateStatus status);

/// One estimation trial. abs_error is |beta_hat - beta_star| when the
/// estimator found a root and NaN otherwise; wall_time_ms is measured and
/// therefore the one field exempt from byte-level reproducibility.
struct TrialRecord {
  int n = 0;
  int trial = 0;
  double beta_star = 0.0;
  double beta_hat = 0.0;
  TrialStatus status = TrialStatus::RootFound;
  double abs_error = 0.0;
  std::int64_t flippable_total = 0;
  long attempts = 0;
  double wall_time_ms = 0.0;
};

struct ConsistencySummary {
  int n = 0;
  int trials = 0;
  int root_found = 0;
  double median_abs_error = 0.0;
  double p90_abs_error = 0.0;
};

struct ConsistencyResult {
  std::vector<TrialRecord> records;
  std::vector<ConsistencySummary> summaries;
};

/// For each n in the grid: draw a degree-bounded random formula (monotone
/// by default, clause count floor(n*d/k)), sample one Gibbs assignment at
/// beta_star, estimate, and record the error. Rejection-budget failures
/// are recorded as SampleFailed rather than aborting the run.
ConsistencyResult run_consistency(const ExperimentConfig& config);

struct ImpossibilityResult {
  int n = 0;
  int k = 0;
  std::size_t clause_count = 0;
  int max_degree = 0;
  int j_star = 0;       // 0 when the plain peaked gadget is used
  bool verified = false;
  double prob_all_true = 0.0;
  double tv_beta1 = 0.0;
  double tv_beta2 = 0.0;
  double total_variation = 0.0;
  int trials = 0;
  std::map<TrialStatus, int> status_counts;
};

/// Builds the requested gadget at the first grid n, tabulates the Gibbs
/// distribution at beta_star (exact, so n must be within the cap), and
/// reports Pr[all-TRUE], the TV distance between tv_beta1 and tv_beta2,
/// and the estimator status distribution over exact samples.
ImpossibilityResult run_impossibility(const ExperimentConfig& config);

}  // namespace klearn
