#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "klearn/distribution.hpp"
#include "klearn/formula.hpp"

namespace klearn {

enum class GadgetVariant : std::uint8_t { Psi0, Psi1 };

/// Parameters of a cyclic-batch gadget instance. Valid shapes have k even,
/// k >= 4, n >= k, and n a multiple of k/2.
struct GadgetSpec {
  int n = 0;
  int k = 0;
  GadgetVariant variant = GadgetVariant::Psi0;
  std::optional<std::vector<int>> permutation;  // identity when absent
};

/// Throws domain_error unless (n, k) is a valid gadget shape.
void validate_gadget_shape(int n, int k);

/// The i-th cyclic batch: { perm[(i + j) mod n] : j in [0, k/2) }, returned
/// in window order. Batches i and i + k/2 are disjoint.
std::vector<int> batch_indices(int i, int n, int k,
                               const std::vector<int>& permutation = {});

/// The peaked gadget: for every batch i and every pivot in that batch, a
/// clause over batch i (pivot positive, rest negated) joined with batch
/// i + k/2 all-negated. Exactly n*k/2 clauses; every variable has degree
/// exactly k^2/2; all-TRUE satisfies it, and any other satisfying
/// assignment leaves at least 2n/k variables FALSE.
Formula build_psi0(int n, int k, const std::vector<int>& permutation = {});

/// Polarity mirror of build_psi0: all-FALSE plays the role of all-TRUE.
Formula build_psi1(int n, int k, const std::vector<int>& permutation = {});

/// Replica count J* = max(2, floor((2k/b) * (1 - 1/b)^{-k/2})), with a 1e-9
/// guard on the floor against boundary misrounding. Requires b > 1.
int jstar(double b, int k);

/// Clause-list union of one peaked gadget per permutation (duplicates
/// retained; the degree cap field is perms.size() * k^2/2).
Formula replica_union(int n, int k,
                      const std::vector<std::vector<int>>& permutations);

enum class ReplicaMode : std::uint8_t { Verified, Analytic };

/// Provenance of a replica-amplified gadget. seeds[t] is the shuffle seed
/// of replica t (seeds[0] = 0: replica 0 is always the identity).
struct ReplicaSpec {
  GadgetSpec base;
  double b = 2.0;
  int j_star = 2;
  std::vector<std::uint64_t> seeds;
  bool verified = false;
};

struct ReplicaBuild {
  ReplicaSpec spec;
  Formula formula;
};

/// Union of J* = jstar(b, k) permuted replicas of the peaked gadget,
/// replica 0 on the identity permutation. Verified mode regenerates the
/// random permutations (fresh sub-seeds, at most 64 retries) until
/// verify_gap holds at threshold ceil(n/b), and requires n within the
/// enumeration cap; analytic mode builds once without checking.
ReplicaBuild build_psi2(int n, int k, double b, std::uint64_t seed,
                        ReplicaMode mode = ReplicaMode::Verified,
                        int cap = kDefaultEnumerationCap);

/// negate_all of the matching build_psi2 output (same seeds, same retry
/// resolution); the gap guarantee transfers with TRUE and FALSE swapped.
ReplicaBuild build_psi3(int n, int k, double b, std::uint64_t seed,
                        ReplicaMode mode = ReplicaMode::Verified,
                        int cap = kDefaultEnumerationCap);

/// Probability that one uniformly placed batch of k/2 distinct variables
/// misses a fixed set of `set_size` variables entirely:
/// prod over r < k/2 of (n - set_size - r) / (n - r).
double miss_probability(int set_size, int n, int k);

}  // namespace klearn
