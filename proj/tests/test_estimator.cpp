#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "klearn/estimator.hpp"
#include "klearn/gadgets.hpp"
#include "klearn/numeric.hpp"
#include "test_support.hpp"

using namespace klearn;

namespace {

Formula free_formula(int n) { return Formula(n, 1, 1, {}); }

Classification counts_only(std::int64_t ft, std::int64_t ff, std::int64_t st,
                           std::int64_t sf) {
  Classification c;
  c.flippable_true = ft;
  c.flippable_false = ff;
  c.stuck_true = st;
  c.stuck_false = sf;
  return c;
}

Assignment complement(const Assignment& a) {
  std::vector<bool> values;
  values.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) values.push_back(!a[i]);
  return Assignment(values);
}

}  // namespace

TEST_CASE("classification of the free measure splits by value") {
  const Classification c = classify(free_formula(4), Assignment::from_string("1010"));
  CHECK(c.flippable_true == 2);
  CHECK(c.flippable_false == 2);
  CHECK(c.stuck_true == 0);
  CHECK(c.stuck_false == 0);
  REQUIRE(c.per_variable.size() == 4);
  CHECK(c.per_variable[0] == VarCategory::FlippableTrue);
  CHECK(c.per_variable[1] == VarCategory::FlippableFalse);
  CHECK(c.flippable_total() == 4);
  CHECK(c.true_count() == 2);
}

TEST_CASE("classification distinguishes stuck from flippable") {
  const Formula f(2, 2, 1, {Clause{{pos(0), pos(1)}}});
  const Classification c = classify(f, Assignment::from_string("10"));
  CHECK(c.per_variable[0] == VarCategory::StuckTrue);
  CHECK(c.per_variable[1] == VarCategory::FlippableFalse);
  CHECK(c.stuck_true == 1);
  CHECK(c.flippable_false == 1);
}

TEST_CASE("all-TRUE on the peaked gadget is fully stuck") {
  const Classification c = classify(build_psi0(8, 4), Assignment::all_true(8));
  CHECK(c.stuck_true == 8);
  CHECK(c.flippable_total() == 0);
}

TEST_CASE("classification requires a satisfying assignment") {
  const Formula f(2, 2, 1, {Clause{{pos(0), pos(1)}}});
  CHECK_THROWS_AS(classify(f, Assignment::all_false(2)), domain_error);
}

TEST_CASE("classification counts always sum to n") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = testsupport::planted_instance(seed);
    const Classification c = classify(inst.formula, inst.assignment);
    CHECK(c.flippable_true + c.flippable_false + c.stuck_true + c.stuck_false ==
          static_cast<std::int64_t>(inst.assignment.size()));
    CHECK(c.true_count() == inst.assignment.count_true());
  }
}

TEST_CASE("pseudo-derivative zeroes at the balanced point") {
  CHECK(pseudo_derivative(counts_only(3, 3, 0, 0), 0.0) == doctest::Approx(0.0));
  CHECK(pseudo_derivative(counts_only(4, 2, 0, 0), std::log(2.0)) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(pseudo_derivative(counts_only(0, 0, 5, 5), 1.7) == 0.0);
}

TEST_CASE("pseudo-derivative is strictly decreasing while flippables exist") {
  const Classification c = counts_only(4, 2, 1, 0);
  double prev = pseudo_derivative(c, -3.0);
  for (double beta = -2.5; beta <= 3.0; beta += 0.5) {
    const double cur = pseudo_derivative(c, beta);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("grouped and direct derivative evaluations agree") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = testsupport::planted_instance(seed);
    const Classification c = classify(inst.formula, inst.assignment);
    for (double beta : {-2.0, -1.0, 0.0, 0.5, 1.5, inst.beta}) {
      CHECK(std::abs(pseudo_derivative(c, beta) -
                     pseudo_derivative_direct(inst.formula, inst.assignment,
                                              beta)) <= 1e-12);
    }
  }
}

TEST_CASE("objective has the closed free-measure form") {
  const Formula f = free_formula(4);
  const Assignment a = Assignment::from_string("1010");
  CHECK(log_pseudo_likelihood(f, a, 0.0) ==
        doctest::Approx(-4.0 * std::log(2.0)).epsilon(1e-14));
  for (double beta : {-1.5, 0.3, 2.0}) {
    CHECK(log_pseudo_likelihood(f, a, beta) ==
          doctest::Approx(2.0 * beta - 4.0 * softplus(beta)).epsilon(1e-13));
  }
}

TEST_CASE("derivatives match finite differences of the objective") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = testsupport::planted_instance(seed);
    const Classification c = classify(inst.formula, inst.assignment);
    const auto F = [&](double b) {
      return log_pseudo_likelihood(inst.formula, inst.assignment, b);
    };
    for (double beta : {-1.0, 0.0, inst.beta}) {
      const double d1 = pseudo_derivative(c, beta);
      const double fd1 = testsupport::central_diff(F, beta, 1e-5);
      CHECK(std::abs(d1 - fd1) <= 1e-6);

      const double d2 = second_derivative(c, beta);
      const double fd2 = testsupport::second_central_diff(F, beta, 1e-3);
      CHECK(testsupport::close_rel(d2, fd2, 1e-5));
    }
  }
}

TEST_CASE("second derivative has the logistic-variance form") {
  const Classification c = counts_only(5, 3, 1, 1);
  for (double beta : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    const double expected =
        -std::exp(beta) / std::pow(1.0 + std::exp(beta), 2.0) * 8.0;
    CHECK(std::abs(second_derivative(c, beta) - expected) <= 1e-12);
    CHECK(second_derivative(c, beta) <= 0.0);
  }
  CHECK(second_derivative(counts_only(0, 0, 4, 4), 1.0) == 0.0);
  CHECK(second_derivative(counts_only(4, 4, 0, 0), 0.0) ==
        doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("estimator recovers the closed-form root") {
  const EstimatorConfig cfg{10.0, 1e-6};
  const auto r = estimate(free_formula(6), Assignment::from_string("111100"), cfg);
  CHECK(r.status == EstimateStatus::RootFound);
  CHECK(r.beta_hat == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(r.iterations >= 20);
  CHECK(r.iterations <= 60);
  CHECK(r.classification.flippable_true == 4);
  CHECK(r.classification.flippable_false == 2);

  const auto cf = estimate_closed_form(r.classification);
  REQUIRE(cf.has_value());
  CHECK(*cf == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("estimator reports non-identifiability when nothing is flippable") {
  const auto r = estimate(build_psi0(8, 4), Assignment::all_true(8), {});
  CHECK(r.status == EstimateStatus::NonIdentifiable);
  CHECK(r.beta_hat == 0.0);
  CHECK(r.iterations == 0);
  CHECK(estimate_closed_form(r.classification) == std::nullopt);
}

TEST_CASE("estimator clamps when the derivative never crosses zero") {
  const Formula f(2, 2, 1, {Clause{{pos(0), pos(1)}}});
  const auto high = estimate(f, Assignment::all_true(2), EstimatorConfig{10.0, 1e-6});
  CHECK(high.status == EstimateStatus::ClampedHigh);
  CHECK(high.beta_hat == doctest::Approx(20.0));
  CHECK(estimate_closed_form(high.classification) == std::nullopt);

  const auto low =
      estimate(negate_all(f), Assignment::all_false(2), EstimatorConfig{10.0, 1e-6});
  CHECK(low.status == EstimateStatus::ClampedLow);
  CHECK(low.beta_hat == doctest::Approx(-20.0));
}

TEST_CASE("a root outside the search box clamps at the boundary") {
  // Root ln 2 with box [-0.4, 0.4].
  const auto r = estimate(free_formula(3), Assignment::from_string("110"),
                          EstimatorConfig{0.2, 1e-6});
  CHECK(r.status == EstimateStatus::ClampedHigh);
  CHECK(r.beta_hat == doctest::Approx(0.4));
}

TEST_CASE("estimator validates its configuration") {
  const Formula f = free_formula(2);
  const Assignment a = Assignment::from_string("10");
  CHECK_THROWS_AS(estimate(f, a, EstimatorConfig{0.0, 1e-6}), domain_error);
  CHECK_THROWS_AS(estimate(f, a, EstimatorConfig{-1.0, {}}), domain_error);
  CHECK_THROWS_AS(estimate(f, a, EstimatorConfig{1.0, 0.0}), domain_error);
  CHECK_THROWS_AS(estimate(f, a, EstimatorConfig{1.0, -0.5}), domain_error);
  CHECK_THROWS_AS(estimate(f, Assignment::from_string("1"), {}), domain_error);
}

TEST_CASE("default tolerance scales as the inverse square root of n") {
  // With n = 16 the default epsilon is 0.25; the bracket midpoint can sit
  // at most 0.125 off the root.
  const Formula f = free_formula(16);
  const Assignment a = Assignment::from_string("1111111100000000");
  const auto r = estimate(f, a, EstimatorConfig{});
  CHECK(r.status == EstimateStatus::RootFound);
  CHECK(std::abs(r.beta_hat - 0.0) <= 0.125 + 1e-12);
}

TEST_CASE("bisection agrees with the closed form on random instances") {
  int roots = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = testsupport::planted_instance(seed);
    const EstimatorConfig cfg{5.0, 1e-6};
    const auto r = estimate(inst.formula, inst.assignment, cfg);
    const auto cf = estimate_closed_form(r.classification);
    if (r.status == EstimateStatus::RootFound) {
      REQUIRE(cf.has_value());
      CHECK(std::abs(r.beta_hat - *cf) <= 1e-6);
      ++roots;
    } else if (r.status == EstimateStatus::ClampedHigh) {
      CHECK((!cf.has_value() || *cf >= 10.0 - 1e-6));
    } else if (r.status == EstimateStatus::ClampedLow) {
      CHECK((!cf.has_value() || *cf <= -10.0 + 1e-6));
    } else {
      CHECK(r.classification.flippable_total() == 0);
    }
  }
  CHECK(roots > 50);
}

TEST_CASE("estimation is antisymmetric under polarity reversal") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = testsupport::planted_instance(seed);
    const EstimatorConfig cfg{5.0, 1e-6};
    const auto r = estimate(inst.formula, inst.assignment, cfg);
    const auto m =
        estimate(negate_all(inst.formula), complement(inst.assignment), cfg);
    CHECK(m.classification.flippable_true == r.classification.flippable_false);
    CHECK(m.classification.flippable_false == r.classification.flippable_true);
    CHECK(m.classification.stuck_true == r.classification.stuck_false);
    CHECK(m.classification.stuck_false == r.classification.stuck_true);
    switch (r.status) {
      case EstimateStatus::RootFound:
        CHECK(m.status == EstimateStatus::RootFound);
        CHECK(std::abs(m.beta_hat + r.beta_hat) <= 1e-5);
        break;
      case EstimateStatus::ClampedHigh:
        CHECK(m.status == EstimateStatus::ClampedLow);
        break;
      case EstimateStatus::ClampedLow:
        CHECK(m.status == EstimateStatus::ClampedHigh);
        break;
      case EstimateStatus::NonIdentifiable:
        CHECK(m.status == EstimateStatus::NonIdentifiable);
        break;
    }
  }
}

TEST_CASE("score second moment matches the free-measure variance") {
  const Formula f(10, 3, 2, {});
  for (double beta : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
    const double p = sigmoid(beta);
    CHECK(second_moment_diagnostic(f, beta) ==
          doctest::Approx(10.0 * p * (1.0 - p)).epsilon(1e-10));
  }
}

TEST_CASE("score second moment stays under the degree bound") {
  const Formula psi0 = build_psi0(8, 4);
  for (double beta : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    const double value = second_moment_diagnostic(psi0, beta);
    CHECK(value >= 0.0);
    CHECK(value <= 4.0 * 8.0 * 8.0 + 1e-9);
  }
}
