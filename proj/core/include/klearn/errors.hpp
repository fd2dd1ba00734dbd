#pragma once

#include <stdexcept>
#include <string>

namespace klearn {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Precondition or domain violation: invalid parameters, unsatisfying
/// assignments, enumeration-cap overruns, malformed input files.
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what) : error(what) {}
};

/// The formula has no satisfying assignment where one is required.
class unsat_error : public domain_error {
 public:
  explicit unsat_error(const std::string& what) : domain_error(what) {}
};

/// DIMACS (or other textual) input could not be parsed.
class parse_error : public domain_error {
 public:
  explicit parse_error(const std::string& what) : domain_error(what) {}
};

/// A bounded retry/attempt budget ran out before success.
class budget_error : public error {
 public:
  budget_error(const std::string& what, long attempts)
      : error(what), attempts_(attempts) {}

  long attempts() const noexcept { return attempts_; }

 private:
  long attempts_;
};

}  // namespace klearn
