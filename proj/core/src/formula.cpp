#include "klearn/formula.hpp"

#include <algorithm>
#include <unordered_set>

namespace klearn {

Assignment Assignment::from_mask(std::uint32_t mask, std::size_t n) {
  if (n > 32) throw domain_error("from_mask: n exceeds 32");
  std::vector<bool> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = (mask >> (n - 1 - i)) & 1u;
  }
  return Assignment(std::move(values));
}

Assignment Assignment::from_string(const std::string& bits) {
  std::vector<bool> values(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '0') {
      values[i] = false;
    } else if (bits[i] == '1') {
      values[i] = true;
    } else {
      throw domain_error("assignment string must contain only 0 and 1");
    }
  }
  return Assignment(std::move(values));
}

Assignment Assignment::flipped(std::size_t i) const {
  if (i >= values_.size()) throw domain_error("flipped: variable out of range");
  Assignment copy(*this);
  copy.values_[i] = !copy.values_[i];
  return copy;
}

int Assignment::count_true() const noexcept {
  int m = 0;
  for (bool v : values_) m += v ? 1 : 0;
  return m;
}

std::uint32_t Assignment::to_mask() const {
  const std::size_t n = values_.size();
  if (n > 32) throw domain_error("to_mask: n exceeds 32");
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (values_[i]) mask |= 1u << (n - 1 - i);
  }
  return mask;
}

std::string Assignment::to_string() const {
  std::string s(values_.size(), '0');
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i]) s[i] = '1';
  }
  return s;
}

Formula::Formula(int n, int k, int d, std::vector<Clause> clauses)
    : n_(n), k_(k), d_(d), clauses_(std::move(clauses)) {
  if (n < 0) throw domain_error("formula: negative variable count");
  if (k < 0 || d < 0) throw domain_error("formula: negative arity or degree cap");
  incidence_.resize(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    for (const Literal& lit : clauses_[c].literals) {
      if (lit.variable < 0 || lit.variable >= n) {
        throw domain_error("formula: literal variable out of range");
      }
      auto& inc = incidence_[static_cast<std::size_t>(lit.variable)];
      if (inc.empty() || inc.back() != static_cast<int>(c)) {
        inc.push_back(static_cast<int>(c));
      }
    }
  }
}

const std::vector<int>& Formula::incidence(int variable) const {
  if (variable < 0 || variable >= n_) {
    throw domain_error("incidence: variable out of range");
  }
  return incidence_[static_cast<std::size_t>(variable)];
}

int Formula::degree(int variable) const {
  return static_cast<int>(incidence(variable).size());
}

int Formula::max_degree() const noexcept {
  int best = 0;
  for (const auto& inc : incidence_) {
    best = std::max(best, static_cast<int>(inc.size()));
  }
  return best;
}

std::vector<Violation> validate(const Formula& formula) {
  std::vector<Violation> out;
  const int k = formula.clause_arity();
  const auto& clauses = formula.clauses();
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto& lits = clauses[c].literals;
    if (static_cast<int>(lits.size()) != k) {
      out.push_back({Violation::Kind::ClauseArity, static_cast<int>(c), -1,
                     "clause " + std::to_string(c) + " has arity " +
                         std::to_string(lits.size()) + ", expected " +
                         std::to_string(k)});
    }
    std::unordered_set<int> seen;
    for (const Literal& lit : lits) {
      if (!seen.insert(lit.variable).second) {
        out.push_back({Violation::Kind::DuplicateVariable,
                       static_cast<int>(c), lit.variable,
                       "clause " + std::to_string(c) + " repeats variable " +
                           std::to_string(lit.variable)});
        break;
      }
    }
  }
  for (int v = 0; v < formula.variable_count(); ++v) {
    const int deg = formula.degree(v);
    if (deg > formula.degree_cap()) {
      out.push_back({Violation::Kind::DegreeExceeded, -1, v,
                     "variable " + std::to_string(v) + " has degree " +
                         std::to_string(deg) + ", cap " +
                         std::to_string(formula.degree_cap())});
    }
  }
  return out;
}

bool satisfies(const Formula& formula, const Assignment& assignment) {
  if (static_cast<int>(assignment.size()) != formula.variable_count()) {
    throw domain_error("satisfies: assignment length mismatch");
  }
  for (const Clause& clause : formula.clauses()) {
    bool sat = false;
    for (const Literal& lit : clause.literals) {
      if (assignment[static_cast<std::size_t>(lit.variable)] != lit.negated) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

Formula negate_all(const Formula& formula) {
  std::vector<Clause> clauses = formula.clauses();
  for (Clause& clause : clauses) {
    for (Literal& lit : clause.literals) lit.negated = !lit.negated;
  }
  return Formula(formula.variable_count(), formula.clause_arity(),
                 formula.degree_cap(), std::move(clauses));
}

}  // namespace klearn
