#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "klearn/conditions.hpp"
#include "klearn/dimacs.hpp"
#include "klearn/distribution.hpp"
#include "klearn/estimator.hpp"
#include "klearn/experiment.hpp"
#include "klearn/gadgets.hpp"
#include "klearn/generator.hpp"
#include "klearn/rng.hpp"
#include "report.hpp"

namespace klearn::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitBudget = 3;

struct GenOptions {
  std::string variant;
  int n = 0;
  int k = 0;
  double b = 2.0;
  int d = 0;
  int m = -1;
  std::uint64_t seed = 0;
  std::string mode = "verified";
  int cap = kDefaultEnumerationCap;
  bool monotone = false;
  std::string out_path;
};

struct SampleOptions {
  std::string formula_path;
  double beta = 0.0;
  int count = 1;
  std::uint64_t seed = 0;
  std::string sampler = "exact";
  long max_attempts = 10000;
  int cap = kDefaultEnumerationCap;
  std::string out_path;
};

struct EstimateOptions {
  std::string formula_path;
  std::string assignment;
  std::string assignment_file;
  double B = 10.0;
  double epsilon = 0.0;  // 0: default n^{-1/2}
};

struct CheckOptions {
  int d = 0;
  int k = 0;
  std::optional<double> B;
  std::optional<double> beta_star;
  std::optional<double> alpha;
};

struct ConsistencyOptions {
  std::vector<int> n_grid;
  int k = 5;
  int d = 3;
  double beta_star = 0.5;
  double B = 2.0;
  double epsilon = 0.0;  // 0: estimator default n^{-1/2}
  int trials = 200;
  std::uint64_t seed = 0;
  std::string sampler = "rejection";
  long max_attempts = 100000;
  int cap = kDefaultEnumerationCap;
  bool monotone = true;
  std::string out_path;
  std::string format = "csv";
};

struct ImpossibilityOptions {
  std::string variant = "psi0";
  int n = 0;
  int k = 0;
  double b = 2.0;
  double beta_star = 0.0;
  double tv_beta1 = 3.0;
  double tv_beta2 = 4.0;
  int trials = 100;
  std::uint64_t seed = 0;
  double B = 10.0;
  int cap = kDefaultEnumerationCap;
  std::string out_path;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw domain_error("cannot write '" + path + "'");
  return file;
}

void run_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<Formula> formula;
  std::vector<std::string> metadata;
  ordered_json summary;
  summary["variant"] = opt.variant;

  if (opt.variant == "psi0" || opt.variant == "psi1") {
    formula = opt.variant == "psi0" ? build_psi0(opt.n, opt.k)
                                    : build_psi1(opt.n, opt.k);
    metadata.push_back("variant=" + opt.variant);
  } else if (opt.variant == "psi2" || opt.variant == "psi3") {
    const ReplicaMode mode = opt.mode == "analytic" ? ReplicaMode::Analytic
                                                    : ReplicaMode::Verified;
    ReplicaBuild build = opt.variant == "psi2"
                             ? build_psi2(opt.n, opt.k, opt.b, opt.seed, mode,
                                          opt.cap)
                             : build_psi3(opt.n, opt.k, opt.b, opt.seed, mode,
                                          opt.cap);
    metadata.push_back("variant=" + opt.variant + " b=" +
                       format_double(opt.b) + " jstar=" +
                       std::to_string(build.spec.j_star) + " seed=" +
                       std::to_string(opt.seed) + " verified=" +
                       (build.spec.verified ? "1" : "0"));
    summary["b"] = opt.b;
    summary["jstar"] = build.spec.j_star;
    summary["verified"] = build.spec.verified;
    summary["seed"] = opt.seed;
    formula = std::move(build.formula);
  } else {  // random
    if (opt.d < 1) throw domain_error("gen random: --d is required");
    const int m = opt.m >= 0 ? opt.m : opt.n * opt.d / opt.k;
    formula = random_bounded_formula(opt.n, opt.k, opt.d, m, opt.seed,
                                     opt.monotone);
    metadata.push_back("variant=random seed=" + std::to_string(opt.seed) +
                       " monotone=" + (opt.monotone ? "1" : "0"));
    summary["seed"] = opt.seed;
    summary["monotone"] = opt.monotone;
  }

  summary["n"] = formula->variable_count();
  summary["k"] = formula->clause_arity();
  summary["clauses"] = formula->clause_count();
  summary["max_degree"] = formula->max_degree();
  summary["degree_cap"] = formula->degree_cap();

  if (!opt.out_path.empty()) {
    auto file = open_output(opt.out_path);
    write_dimacs(file, *formula, metadata);
    summary["out"] = opt.out_path;
    out << summary.dump(2) << "\n";
  } else {
    write_dimacs(out, *formula, metadata);
    err << summary.dump(2) << "\n";
  }
}

void run_sample(const SampleOptions& opt, std::ostream& out, std::ostream& err) {
  const Formula formula = parse_dimacs_file(opt.formula_path);
  std::ofstream file;
  std::ostream* lines = &out;
  if (!opt.out_path.empty()) {
    file = open_output(opt.out_path);
    lines = &file;
  }

  long total_attempts = 0;
  if (opt.sampler == "exact") {
    const GibbsTable table = enumerate_gibbs(formula, opt.beta, opt.cap);
    for (int i = 0; i < opt.count; ++i) {
      const SampleReport report = sample_exact(table, derive_seed(opt.seed, i));
      total_attempts += report.attempts;
      *lines << report.assignment.to_string() << "\n";
    }
  } else {
    for (int i = 0; i < opt.count; ++i) {
      const SampleReport report = sample_rejection(
          formula, opt.beta, derive_seed(opt.seed, i), opt.max_attempts);
      total_attempts += report.attempts;
      *lines << report.assignment.to_string() << "\n";
    }
  }
  ordered_json summary;
  summary["count"] = opt.count;
  summary["method"] = opt.sampler;
  summary["total_attempts"] = total_attempts;
  err << summary.dump(2) << "\n";
}

void run_estimate(const EstimateOptions& opt, std::ostream& out) {
  const Formula formula = parse_dimacs_file(opt.formula_path);
  std::string bits = opt.assignment;
  if (!opt.assignment_file.empty()) {
    std::ifstream in(opt.assignment_file);
    if (!(in >> bits)) {
      throw domain_error("cannot read assignment from '" + opt.assignment_file +
                         "'");
    }
  }
  const Assignment assignment = Assignment::from_string(bits);
  if (static_cast<int>(assignment.size()) != formula.variable_count()) {
    throw domain_error("assignment length does not match the formula");
  }
  EstimatorConfig config;
  config.B = opt.B;
  if (opt.epsilon > 0.0) config.epsilon = opt.epsilon;
  const EstimateResult result = estimate(formula, assignment, config);
  out << estimate_to_json(result).dump(2) << "\n";
}

void run_check(const CheckOptions& opt, std::ostream& out) {
  ordered_json reports = ordered_json::array();
  ordered_json skipped = ordered_json::array();
  const auto skip = [&skipped](const std::string& name, const std::string& why) {
    ordered_json j;
    j["name"] = name;
    j["reason"] = why;
    skipped.push_back(j);
  };

  if (opt.B) {
    reports.push_back(condition_to_json(learnable_condition(opt.d, opt.k, *opt.B)));
  }
  if (opt.beta_star) {
    try {
      reports.push_back(condition_to_json(
          impossibility_exp_degree(opt.d, opt.k, *opt.beta_star)));
    } catch (const domain_error& e) {
      skip("impossibility-exp-degree", e.what());
    }
    try {
      reports.push_back(condition_to_json(
          impossibility_quadratic_degree(opt.d, opt.k, *opt.beta_star)));
    } catch (const domain_error& e) {
      skip("impossibility-quadratic-degree", e.what());
    }
  }
  if (opt.alpha) {
    try {
      reports.push_back(
          condition_to_json(impossibility_alpha(opt.d, opt.k, *opt.alpha)));
    } catch (const domain_error& e) {
      skip("impossibility-alpha", e.what());
    }
    if (opt.beta_star) {
      // Gap condition |beta| > f(alpha), reported with both sides explicit.
      const double f = -(*opt.alpha / (1.0 - *opt.alpha)) * std::log(*opt.alpha) -
                       std::log1p(-*opt.alpha);
      ConditionReport gap;
      gap.name = "alpha-gap";
      gap.holds = alpha_condition(*opt.alpha, *opt.beta_star);
      gap.lhs = std::abs(*opt.beta_star);
      gap.rhs = f;
      gap.margin = gap.lhs - gap.rhs;
      reports.push_back(condition_to_json(gap));
    }
  }
  const double lll_beta =
      opt.beta_star ? *opt.beta_star : (opt.B ? *opt.B : 0.0);
  if (opt.beta_star || opt.B) {
    try {
      reports.push_back(
          condition_to_json(lll_condition_check(opt.d, opt.k, lll_beta)));
    } catch (const domain_error& e) {
      skip("lll", e.what());
    }
  }

  ordered_json output;
  output["d"] = opt.d;
  output["k"] = opt.k;
  output["reports"] = reports;
  output["skipped"] = skipped;
  out << output.dump(2) << "\n";
}

void run_consistency_cmd(const ConsistencyOptions& opt, std::ostream& out) {
  ExperimentConfig config;
  config.n_grid = opt.n_grid;
  config.k = opt.k;
  config.d = opt.d;
  config.beta_star = opt.beta_star;
  config.B = opt.B;
  if (opt.epsilon > 0.0) config.epsilon = opt.epsilon;
  config.trials = opt.trials;
  config.seed = opt.seed;
  config.sampler =
      opt.sampler == "exact" ? SamplerKind::Exact : SamplerKind::Rejection;
  config.max_attempts = opt.max_attempts;
  config.cap = opt.cap;
  config.monotone = opt.monotone;
  config.output_path = opt.out_path;

  const ConsistencyResult result = run_consistency(config);

  if (!opt.out_path.empty()) {
    auto file = open_output(opt.out_path);
    if (opt.format == "json") {
      file << trials_to_json(result.records).dump(2) << "\n";
    } else {
      write_trials_csv(file, result.records);
    }
  }

  ordered_json output;
  output["summaries"] = summaries_to_json(result.summaries);
  output["records"] = result.records.size();
  if (!opt.out_path.empty()) {
    output["out"] = opt.out_path;
    output["format"] = opt.format;
  }
  out << output.dump(2) << "\n";
}

void run_impossibility_cmd(const ImpossibilityOptions& opt, std::ostream& out) {
  ExperimentConfig config;
  config.n_grid = {opt.n};
  config.k = opt.k;
  config.beta_star = opt.beta_star;
  config.B = opt.B;
  config.trials = opt.trials;
  config.seed = opt.seed;
  config.cap = opt.cap;
  config.gadget = opt.variant == "psi2" ? ImpossibilityGadget::Psi2
                                        : ImpossibilityGadget::Psi0;
  config.b = opt.b;
  config.tv_beta1 = opt.tv_beta1;
  config.tv_beta2 = opt.tv_beta2;

  const ImpossibilityResult result = run_impossibility(config);
  const ordered_json j = impossibility_to_json(result);
  if (!opt.out_path.empty()) {
    auto file = open_output(opt.out_path);
    file << j.dump(2) << "\n";
  }
  out << j.dump(2) << "\n";
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-sample parameter estimation for weighted k-SAT Gibbs "
               "distributions"};
  app.name("klearn");
  app.require_subcommand(1);

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "Generate a formula and write DIMACS");
  gen->add_option("variant", gen_opt.variant, "Family to generate")
      ->required()
      ->check(CLI::IsMember({"psi0", "psi1", "psi2", "psi3", "random"}));
  gen->add_option("--n", gen_opt.n, "Variable count")->required();
  gen->add_option("--k", gen_opt.k, "Clause arity")->required();
  gen->add_option("--b", gen_opt.b, "Replica parameter (psi2/psi3)");
  gen->add_option("--d", gen_opt.d, "Degree cap (random)");
  gen->add_option("--m", gen_opt.m, "Clause count (random; default n*d/k)");
  gen->add_option("--seed", gen_opt.seed, "Master seed");
  gen->add_option("--mode", gen_opt.mode, "Gap handling for psi2/psi3")
      ->check(CLI::IsMember({"verified", "analytic"}));
  gen->add_option("--cap", gen_opt.cap, "Enumeration cap for verification");
  gen->add_flag("--monotone", gen_opt.monotone, "All-positive clauses (random)");
  gen->add_option("--out", gen_opt.out_path, "Write DIMACS here (else stdout)");
  gen->callback([&]() { run_gen(gen_opt, out, err); });

  SampleOptions sample_opt;
  auto* sample = app.add_subcommand("sample", "Draw Gibbs samples");
  sample->add_option("formula", sample_opt.formula_path, "DIMACS input")
      ->required();
  sample->add_option("--beta", sample_opt.beta, "Inverse temperature")
      ->required();
  sample->add_option("--count", sample_opt.count, "Number of samples")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_opt.seed, "Master seed");
  sample->add_option("--sampler", sample_opt.sampler, "Sampling method")
      ->check(CLI::IsMember({"exact", "rejection"}));
  sample->add_option("--max-attempts", sample_opt.max_attempts,
                     "Rejection budget per sample");
  sample->add_option("--cap", sample_opt.cap, "Enumeration cap");
  sample->add_option("--out", sample_opt.out_path,
                     "Write assignments here (else stdout)");
  sample->callback([&]() { run_sample(sample_opt, out, err); });

  EstimateOptions est_opt;
  auto* est = app.add_subcommand("estimate",
                                 "Estimate beta from one satisfying assignment");
  est->add_option("formula", est_opt.formula_path, "DIMACS input")->required();
  auto* a_inline = est->add_option("--assignment", est_opt.assignment,
                                   "0/1 string, index 0 leftmost");
  auto* a_file = est->add_option("--assignment-file", est_opt.assignment_file,
                                 "File holding the 0/1 string");
  a_inline->excludes(a_file);
  est->add_option("--B", est_opt.B, "Prior half-width; search on [-2B, 2B]");
  est->add_option("--epsilon", est_opt.epsilon,
                  "Bisection tolerance (default n^-1/2)");
  est->callback([&]() {
    if (est_opt.assignment.empty() && est_opt.assignment_file.empty()) {
      throw CLI::ValidationError(
          "estimate: one of --assignment / --assignment-file is required");
    }
    run_estimate(est_opt, out);
  });

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "Evaluate regime conditions");
  check->add_option("--d", check_opt.d, "Degree cap")->required();
  check->add_option("--k", check_opt.k, "Clause arity")->required();
  check->add_option("--B", check_opt.B, "Prior bound on |beta|");
  check->add_option("--beta-star", check_opt.beta_star, "True parameter");
  check->add_option("--alpha", check_opt.alpha, "Alpha parameter in (0, 1)");
  check->callback([&]() {
    if (!check_opt.B && !check_opt.beta_star && !check_opt.alpha) {
      throw CLI::ValidationError(
          "check: supply at least one of --B / --beta-star / --alpha");
    }
    run_check(check_opt, out);
  });

  auto* experiment = app.add_subcommand("experiment", "Run experiment presets");
  experiment->require_subcommand(1);

  ConsistencyOptions cons_opt;
  auto* cons = experiment->add_subcommand(
      "consistency", "Estimation error versus n on random formulas");
  cons->add_option("--n-grid", cons_opt.n_grid, "Comma-separated n values")
      ->required()
      ->delimiter(',');
  cons->add_option("--k", cons_opt.k, "Clause arity");
  cons->add_option("--d", cons_opt.d, "Degree cap");
  cons->add_option("--beta-star", cons_opt.beta_star, "True parameter");
  cons->add_option("--B", cons_opt.B, "Prior half-width");
  cons->add_option("--epsilon", cons_opt.epsilon,
                   "Bisection tolerance (default n^-1/2)");
  cons->add_option("--trials", cons_opt.trials, "Trials per n")
      ->check(CLI::PositiveNumber);
  cons->add_option("--seed", cons_opt.seed, "Master seed");
  cons->add_option("--sampler", cons_opt.sampler, "Sampling method")
      ->check(CLI::IsMember({"exact", "rejection"}));
  cons->add_option("--max-attempts", cons_opt.max_attempts,
                   "Rejection budget per trial");
  cons->add_option("--cap", cons_opt.cap, "Enumeration cap (exact sampler)");
  cons->add_flag("--monotone,!--no-monotone", cons_opt.monotone,
                 "All-positive clauses (default on)");
  cons->add_option("--out", cons_opt.out_path, "Write trial records here");
  cons->add_option("--format", cons_opt.format, "Record format")
      ->check(CLI::IsMember({"csv", "json"}));
  cons->callback([&]() { run_consistency_cmd(cons_opt, out); });

  ImpossibilityOptions imp_opt;
  auto* imp = experiment->add_subcommand(
      "impossibility", "Concentration diagnostics on peaked gadgets");
  imp->add_option("--variant", imp_opt.variant, "Gadget family")
      ->check(CLI::IsMember({"psi0", "psi2"}));
  imp->add_option("--n", imp_opt.n, "Variable count")->required();
  imp->add_option("--k", imp_opt.k, "Clause arity")->required();
  imp->add_option("--b", imp_opt.b, "Replica parameter (psi2)");
  imp->add_option("--beta-star", imp_opt.beta_star, "Sampling temperature")
      ->required();
  imp->add_option("--tv-beta1", imp_opt.tv_beta1, "First TV temperature");
  imp->add_option("--tv-beta2", imp_opt.tv_beta2, "Second TV temperature");
  imp->add_option("--trials", imp_opt.trials, "Exact samples to estimate from")
      ->check(CLI::PositiveNumber);
  imp->add_option("--seed", imp_opt.seed, "Master seed");
  imp->add_option("--B", imp_opt.B, "Estimator prior half-width");
  imp->add_option("--cap", imp_opt.cap, "Enumeration cap");
  imp->add_option("--out", imp_opt.out_path, "Also write the report here");
  imp->callback([&]() { run_impossibility_cmd(imp_opt, out); });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const budget_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace klearn::cli
