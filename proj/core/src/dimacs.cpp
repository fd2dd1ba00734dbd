#include "klearn/dimacs.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace klearn {

namespace {

// Pulls k=<int> / d=<int> tokens out of a "c klearn ..." comment body.
void scan_metadata(const std::string& body, std::optional<int>& k,
                   std::optional<int>& d) {
  std::istringstream in(body);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    try {
      if (key == "k") k = std::stoi(value);
      if (key == "d") d = std::stoi(value);
    } catch (const std::exception&) {
      throw parse_error("dimacs: bad metadata token '" + token + "'");
    }
  }
}

}  // namespace

Formula parse_dimacs(std::istream& in) {
  std::optional<int> meta_k;
  std::optional<int> meta_d;
  bool saw_header = false;
  long long n = 0;
  long long m = 0;
  std::vector<Clause> clauses;
  Clause current;
  bool clause_open = false;

  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") {
      std::string tag;
      if (ls >> tag && tag == "klearn") {
        std::string rest;
        std::getline(ls, rest);
        scan_metadata(rest, meta_k, meta_d);
      }
      continue;
    }
    if (first.size() >= 1 && first[0] == 'c') continue;
    if (first == "%") break;
    if (first == "p") {
      if (saw_header) throw parse_error("dimacs: duplicate header");
      std::string fmt;
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0) {
        throw parse_error("dimacs: malformed header");
      }
      saw_header = true;
      continue;
    }
    if (!saw_header) throw parse_error("dimacs: clause data before header");
    // Literal tokens; the first token was already consumed.
    std::istringstream body(line);
    long long lit;
    while (body >> lit) {
      if (lit == 0) {
        clauses.push_back(std::move(current));
        current = Clause{};
        clause_open = false;
        continue;
      }
      const long long v = lit > 0 ? lit : -lit;
      if (v > n) throw parse_error("dimacs: literal out of range");
      current.literals.push_back({static_cast<int>(v - 1), lit < 0});
      clause_open = true;
    }
    if (body.fail() && !body.eof()) throw parse_error("dimacs: bad literal token");
  }

  if (!saw_header) throw parse_error("dimacs: missing header");
  if (clause_open) throw parse_error("dimacs: unterminated clause");
  if (static_cast<long long>(clauses.size()) != m) {
    throw parse_error("dimacs: clause count disagrees with header");
  }
  if (meta_k) {
    for (const Clause& c : clauses) {
      if (static_cast<int>(c.literals.size()) != *meta_k) {
        throw parse_error("dimacs: clause arity contradicts metadata k");
      }
    }
  }

  const int k = meta_k ? *meta_k
                       : (clauses.empty()
                              ? 0
                              : static_cast<int>(clauses.front().literals.size()));
  int d = 0;
  if (meta_d) {
    d = *meta_d;
  } else {
    std::vector<int> last_clause(static_cast<std::size_t>(n), -1);
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      for (const Literal& lit : clauses[c].literals) {
        if (lit.variable < 0 || lit.variable >= n) continue;
        auto vi = static_cast<std::size_t>(lit.variable);
        if (last_clause[vi] != static_cast<int>(c)) {
          last_clause[vi] = static_cast<int>(c);
          d = std::max(d, ++degree[vi]);
        }
      }
    }
  }
  return Formula(static_cast<int>(n), k, d, std::move(clauses));
}

Formula parse_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

Formula parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("dimacs: cannot open '" + path + "'");
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const Formula& formula,
                  const std::vector<std::string>& extra_metadata) {
  out << "c klearn k=" << formula.clause_arity() << " d=" << formula.degree_cap()
      << "\n";
  for (const std::string& extra : extra_metadata) {
    out << "c klearn " << extra << "\n";
  }
  out << "p cnf " << formula.variable_count() << ' ' << formula.clause_count()
      << "\n";
  for (const Clause& clause : formula.clauses()) {
    for (const Literal& lit : clause.literals) {
      out << (lit.negated ? -(lit.variable + 1) : lit.variable + 1) << ' ';
    }
    out << "0\n";
  }
}

std::string write_dimacs_string(const Formula& formula,
                                const std::vector<std::string>& extra_metadata) {
  std::ostringstream out;
  write_dimacs(out, formula, extra_metadata);
  return out.str();
}

void write_dimacs_file(const std::string& path, const Formula& formula,
                       const std::vector<std::string>& extra_metadata) {
  std::ofstream out(path);
  if (!out) throw domain_error("dimacs: cannot write '" + path + "'");
  write_dimacs(out, formula, extra_metadata);
}

}  // namespace klearn
