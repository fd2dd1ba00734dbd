#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "klearn/errors.hpp"

namespace klearn {

/// A possibly negated variable. Variables are 0-indexed internally;
/// DIMACS I/O shifts to 1-based.
struct Literal {
  int variable = 0;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal pos(int v) { return Literal{v, false}; }
inline Literal neg(int v) { return Literal{v, true}; }

/// Disjunction of literals. Well-formed clauses mention k distinct
/// variables; violations are reported by validate(), not prevented here.
struct Clause {
  std::vector<Literal> literals;

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Truth assignment to variables 0..n-1. TRUE is represented by `true`.
/// Immutable by convention: mutating helpers return copies.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<bool> values) : values_(std::move(values)) {}
  Assignment(std::size_t n, bool fill) : values_(n, fill) {}

  static Assignment all_true(std::size_t n) { return Assignment(n, true); }
  static Assignment all_false(std::size_t n) { return Assignment(n, false); }

  /// Decodes a bit mask where variable 0 occupies the most significant of
  /// the n low bits, so ascending masks enumerate assignments in
  /// lexicographic order.
  static Assignment from_mask(std::uint32_t mask, std::size_t n);

  /// Parses a 0/1 string, index 0 leftmost.
  static Assignment from_string(const std::string& bits);

  std::size_t size() const noexcept { return values_.size(); }
  bool operator[](std::size_t i) const { return values_[i]; }
  bool value(std::size_t i) const { return values_[i]; }

  /// Copy with variable i flipped.
  Assignment flipped(std::size_t i) const;

  /// Number of TRUE variables, the Gibbs weight exponent.
  int count_true() const noexcept;

  std::uint32_t to_mask() const;
  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<bool> values_;
};

inline int count_true(const Assignment& a) noexcept { return a.count_true(); }

/// CNF formula over n variables with declared clause arity k and degree
/// cap d. The clause list is stored as given (duplicates permitted and
/// counted toward degree); the variable->clause incidence map is built
/// eagerly at construction. Immutable after construction.
class Formula {
 public:
  Formula(int n, int k, int d, std::vector<Clause> clauses);

  int variable_count() const noexcept { return n_; }
  int clause_arity() const noexcept { return k_; }
  int degree_cap() const noexcept { return d_; }

  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  std::size_t clause_count() const noexcept { return clauses_.size(); }

  /// Indices of clauses containing the variable (each clause listed once,
  /// even if the variable repeats inside it).
  const std::vector<int>& incidence(int variable) const;

  /// Number of clauses containing the variable.
  int degree(int variable) const;

  int max_degree() const noexcept;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  int n_;
  int k_;
  int d_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> incidence_;
};

/// A structural defect found by validate().
struct Violation {
  enum class Kind { ClauseArity, DuplicateVariable, DegreeExceeded };

  Kind kind;
  int clause_index = -1;  // offending clause, or -1 for variable-level kinds
  int variable = -1;      // offending variable, or -1 for clause-level kinds
  std::string message;
};

/// Checks arity, per-clause variable distinctness, and the degree cap.
/// Returns all violations as data; an empty list means well-formed.
std::vector<Violation> validate(const Formula& formula);

/// TRUE iff every clause holds under the assignment. An empty clause list
/// is vacuously satisfied. Throws on length mismatch.
bool satisfies(const Formula& formula, const Assignment& assignment);

/// Flips the polarity of every literal. Involution; preserves n, k, d and
/// clause order.
Formula negate_all(const Formula& formula);

}  // namespace klearn
