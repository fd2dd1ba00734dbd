#include "report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace klearn::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_trials_csv(std::ostream& out,
                      const std::vector<TrialRecord>& records) {
  out << "n,trial,beta_star,beta_hat,status,abs_error,flippable_total,"
         "attempts,wall_time_ms\n";
  for (const TrialRecord& r : records) {
    out << r.n << ',' << r.trial << ',' << format_double(r.beta_star) << ','
        << format_double(r.beta_hat) << ',' << to_string(r.status) << ','
        << format_double(r.abs_error) << ',' << r.flippable_total << ','
        << r.attempts << ',' << format_double(r.wall_time_ms) << '\n';
  }
}

ordered_json trial_to_json(const TrialRecord& r) {
  ordered_json j;
  j["n"] = r.n;
  j["trial"] = r.trial;
  j["beta_star"] = r.beta_star;
  j["beta_hat"] = r.beta_hat;
  j["status"] = to_string(r.status);
  j["abs_error"] = r.abs_error;
  j["flippable_total"] = r.flippable_total;
  j["attempts"] = r.attempts;
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

ordered_json trials_to_json(const std::vector<TrialRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const TrialRecord& r : records) arr.push_back(trial_to_json(r));
  return arr;
}

ordered_json summaries_to_json(const std::vector<ConsistencySummary>& summaries) {
  ordered_json arr = ordered_json::array();
  for (const ConsistencySummary& s : summaries) {
    ordered_json j;
    j["n"] = s.n;
    j["trials"] = s.trials;
    j["root_found"] = s.root_found;
    j["median_abs_error"] = s.median_abs_error;
    j["p90_abs_error"] = s.p90_abs_error;
    arr.push_back(j);
  }
  return arr;
}

ordered_json condition_to_json(const ConditionReport& report) {
  ordered_json j;
  j["name"] = report.name;
  j["holds"] = report.holds;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["margin"] = report.margin;
  return j;
}

ordered_json estimate_to_json(const EstimateResult& result) {
  ordered_json j;
  j["beta_hat"] = result.beta_hat;
  j["status"] = to_string(result.status);
  j["iterations"] = result.iterations;
  const Classification& cls = result.classification;
  j["flippable_true"] = cls.flippable_true;
  j["flippable_false"] = cls.flippable_false;
  j["stuck_true"] = cls.stuck_true;
  j["stuck_false"] = cls.stuck_false;
  j["true_count"] = cls.true_count();
  const auto closed = estimate_closed_form(cls);
  if (closed) {
    j["closed_form"] = *closed;
  } else {
    j["closed_form"] = nullptr;
  }
  return j;
}

ordered_json impossibility_to_json(const ImpossibilityResult& result) {
  ordered_json j;
  j["n"] = result.n;
  j["k"] = result.k;
  j["clauses"] = result.clause_count;
  j["max_degree"] = result.max_degree;
  if (result.j_star > 0) {
    j["jstar"] = result.j_star;
    j["verified"] = result.verified;
  }
  j["prob_all_true"] = result.prob_all_true;
  j["tv_beta1"] = result.tv_beta1;
  j["tv_beta2"] = result.tv_beta2;
  j["total_variation"] = result.total_variation;
  j["trials"] = result.trials;
  ordered_json counts;
  for (const auto& [status, count] : result.status_counts) {
    counts[to_string(status)] = count;
  }
  j["status_counts"] = counts;
  return j;
}

}  // namespace klearn::cli
