#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "klearn/conditions.hpp"
#include "klearn/estimator.hpp"
#include "klearn/experiment.hpp"

namespace klearn::cli {

using ordered_json = nlohmann::ordered_json;

/// Shortest round-trip decimal form; NaN renders as the empty string.
std::string format_double(double value);

/// Fixed trial-record schema, header always present:
/// n,trial,beta_star,beta_hat,status,abs_error,flippable_total,attempts,wall_time_ms
/// Fields undefined for the trial's status (for example abs_error outside
/// root-found) are left empty. wall_time_ms is measured, not seeded.
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);

ordered_json trial_to_json(const TrialRecord& record);
ordered_json trials_to_json(const std::vector<TrialRecord>& records);
ordered_json summaries_to_json(const std::vector<ConsistencySummary>& summaries);
ordered_json condition_to_json(const ConditionReport& report);
ordered_json estimate_to_json(const EstimateResult& result);
ordered_json impossibility_to_json(const ImpossibilityResult& result);

}  // namespace klearn::cli
