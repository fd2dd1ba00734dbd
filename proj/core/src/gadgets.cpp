#include "klearn/gadgets.hpp"

#include <cmath>

#include "klearn/rng.hpp"

namespace klearn {

namespace {

constexpr int kVerifyRetryBudget = 64;

void require_permutation(const std::vector<int>& perm, int n) {
  if (perm.empty()) return;  // identity
  if (static_cast<int>(perm.size()) != n) {
    throw domain_error("gadget: permutation length differs from n");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw domain_error("gadget: permutation is not a bijection on [0, n)");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

inline int apply(const std::vector<int>& perm, int idx) {
  return perm.empty() ? idx : perm[static_cast<std::size_t>(idx)];
}

std::vector<int> identity_permutation(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  return perm;
}

// Clause list of one peaked gadget; shape and permutation already checked.
void append_psi0_clauses(int n, int k, const std::vector<int>& perm,
                         std::vector<Clause>& clauses) {
  const int half = k / 2;
  for (int i = 0; i < n; ++i) {
    for (int pivot = 0; pivot < half; ++pivot) {
      Clause clause;
      clause.literals.reserve(static_cast<std::size_t>(k));
      // Batch i: the pivot variable positive, the others negated.
      for (int j = 0; j < half; ++j) {
        const int v = apply(perm, (i + j) % n);
        clause.literals.push_back({v, j != pivot});
      }
      // Batch i + k/2, fully negated.
      for (int j = 0; j < half; ++j) {
        const int v = apply(perm, (i + half + j) % n);
        clause.literals.push_back({v, true});
      }
      clauses.push_back(std::move(clause));
    }
  }
}

}  // namespace

void validate_gadget_shape(int n, int k) {
  if (k < 4 || k % 2 != 0) {
    throw domain_error("gadget: k must be even and at least 4");
  }
  if (n < k) throw domain_error("gadget: n must be at least k");
  if (n % (k / 2) != 0) {
    throw domain_error("gadget: n must be a multiple of k/2");
  }
}

std::vector<int> batch_indices(int i, int n, int k,
                               const std::vector<int>& permutation) {
  validate_gadget_shape(n, k);
  require_permutation(permutation, n);
  if (i < 0) throw domain_error("batch_indices: i must be non-negative");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k / 2));
  for (int j = 0; j < k / 2; ++j) {
    out.push_back(apply(permutation, (i + j) % n));
  }
  return out;
}

Formula build_psi0(int n, int k, const std::vector<int>& permutation) {
  validate_gadget_shape(n, k);
  require_permutation(permutation, n);
  std::vector<Clause> clauses;
  clauses.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k / 2));
  append_psi0_clauses(n, k, permutation, clauses);
  return Formula(n, k, k * k / 2, std::move(clauses));
}

Formula build_psi1(int n, int k, const std::vector<int>& permutation) {
  return negate_all(build_psi0(n, k, permutation));
}

int jstar(double b, int k) {
  if (!(b > 1.0)) throw domain_error("jstar: b must exceed 1");
  if (k < 4 || k % 2 != 0) {
    throw domain_error("jstar: k must be even and at least 4");
  }
  const double value =
      (2.0 * static_cast<double>(k) / b) *
      std::pow(1.0 - 1.0 / b, -static_cast<double>(k) / 2.0);
  const auto floored = static_cast<int>(std::floor(value + 1e-9));
  return floored > 2 ? floored : 2;
}

Formula replica_union(int n, int k,
                      const std::vector<std::vector<int>>& permutations) {
  validate_gadget_shape(n, k);
  if (permutations.empty()) {
    throw domain_error("replica_union: need at least one permutation");
  }
  std::vector<Clause> clauses;
  clauses.reserve(permutations.size() * static_cast<std::size_t>(n) *
                  static_cast<std::size_t>(k / 2));
  for (const auto& perm : permutations) {
    require_permutation(perm, n);
    append_psi0_clauses(n, k, perm, clauses);
  }
  const int degree_cap = static_cast<int>(permutations.size()) * k * k / 2;
  return Formula(n, k, degree_cap, std::move(clauses));
}

ReplicaBuild build_psi2(int n, int k, double b, std::uint64_t seed,
                        ReplicaMode mode, int cap) {
  validate_gadget_shape(n, k);
  const int j = jstar(b, k);
  const int threshold =
      static_cast<int>(std::ceil(static_cast<double>(n) / b - 1e-9));
  if (mode == ReplicaMode::Verified && n > cap) {
    throw domain_error("build_psi2: verified mode needs n within the cap");
  }
  const int retries = mode == ReplicaMode::Verified ? kVerifyRetryBudget : 1;
  for (int retry = 0; retry < retries; ++retry) {
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(j), 0);
    std::vector<std::vector<int>> perms;
    perms.reserve(static_cast<std::size_t>(j));
    perms.push_back(identity_permutation(n));
    for (int t = 1; t < j; ++t) {
      seeds[static_cast<std::size_t>(t)] = derive_seed(seed, retry, t);
      CounterRng rng(seeds[static_cast<std::size_t>(t)]);
      perms.push_back(random_permutation(n, rng));
    }
    Formula formula = replica_union(n, k, perms);
    const bool ok =
        mode == ReplicaMode::Analytic || verify_gap(formula, threshold, cap);
    if (ok) {
      ReplicaSpec spec{GadgetSpec{n, k, GadgetVariant::Psi0, std::nullopt}, b,
                       j, std::move(seeds), mode == ReplicaMode::Verified};
      return ReplicaBuild{std::move(spec), std::move(formula)};
    }
  }
  throw budget_error("build_psi2: gap verification retry budget exhausted",
                     kVerifyRetryBudget);
}

ReplicaBuild build_psi3(int n, int k, double b, std::uint64_t seed,
                        ReplicaMode mode, int cap) {
  ReplicaBuild build = build_psi2(n, k, b, seed, mode, cap);
  build.spec.base.variant = GadgetVariant::Psi1;
  build.formula = negate_all(build.formula);
  return build;
}

double miss_probability(int set_size, int n, int k) {
  validate_gadget_shape(n, k);
  if (set_size < 0 || set_size > n - k / 2) {
    throw domain_error("miss_probability: set_size outside [0, n - k/2]");
  }
  double prob = 1.0;
  for (int r = 0; r < k / 2; ++r) {
    prob *= static_cast<double>(n - set_size - r) / static_cast<double>(n - r);
  }
  return prob;
}

}  // namespace klearn
