#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "klearn/formula.hpp"

namespace klearn {

/// Reads DIMACS CNF: `p cnf <n> <m>` header, 1-based literals, clauses
/// terminated by 0. A `c klearn k=<k> d=<d>` comment, when present, pins
/// the declared arity and degree cap; otherwise k is inferred from the
/// first clause and d from the observed maximum degree. Unknown comment
/// lines are ignored. Throws parse_error on malformed input, out-of-range
/// literals, or an arity that contradicts the metadata.
Formula parse_dimacs(std::istream& in);
Formula parse_dimacs_string(const std::string& text);
Formula parse_dimacs_file(const std::string& path);

/// Writes canonical DIMACS: the `c klearn k= d=` metadata line, optional
/// extra `c klearn ...` comments, the header, then one clause per line.
/// parse(write(f)) reproduces f exactly.
void write_dimacs(std::ostream& out, const Formula& formula,
                  const std::vector<std::string>& extra_metadata = {});
std::string write_dimacs_string(const Formula& formula,
                                const std::vector<std::string>& extra_metadata = {});
void write_dimacs_file(const std::string& path, const Formula& formula,
                       const std::vector<std::string>& extra_metadata = {});

}  // namespace klearn
