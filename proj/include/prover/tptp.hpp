/**
 * @file tptp.hpp
 * Parsing and serialization for the TPTP CNF dialect without equality:
 * `cnf(name, role, formula).` statements, `include('file').` directives and
 * `%` comments. FOF/TFF inputs and `=`/`!=` literals are rejected with
 * explicit unsupported-feature errors.
 */
#ifndef PROVER_TPTP_HPP
#define PROVER_TPTP_HPP

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prover/fol.hpp"

namespace prover {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, arity_mismatch, unsupported, include_cycle, io };

  ParseError(Kind kind, const std::string& message, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                           ": " + message),
        kind(kind),
        line(line),
        col(col) {}

  Kind kind;
  int line;
  int col;
};

/// A CNF problem: axiom clauses (roles axiom/hypothesis/lemma) plus clauses
/// with role negated_conjecture, over a shared signature. Variable ids are
/// problem-unique; parsed display names are kept for round-trip printing.
struct Problem {
  std::string name;
  std::vector<Clause> axioms;
  std::vector<Clause> negated_conjecture;
  Signature signature;
  VarNames var_names;
  std::vector<std::string> source_files;
  VarId next_var = 0;

  /// Axioms followed by negated-conjecture clauses; the saturation input.
  std::vector<Clause> initial_clauses() const;
};

/// Maps an include path to file contents; throws to signal a missing file.
using IncludeResolver = std::function<std::string(const std::string&)>;

Problem parse_tptp_cnf(const std::string& text, const IncludeResolver& resolver = {},
                       const std::string& name = "problem");

/// Loads a problem file; include directives resolve relative to
/// `include_root` (defaults to the file's own directory).
Problem load_problem(const std::filesystem::path& path);
Problem load_problem(const std::filesystem::path& path, const std::filesystem::path& include_root);

std::string term_to_string(const Term& t, const Signature& sig, const VarNames* names = nullptr);

/// TPTP CNF formula text, e.g. "~p(X) | q(f(X,c))"; the empty clause prints
/// as "$false". Display names are uniquified per clause so distinct variables
/// never share a name.
std::string serialize_clause(const Clause& c, const Signature& sig,
                             const VarNames* names = nullptr);

/// Whole-file serialization with cnf statements named a<i> / nc<i>.
std::string serialize_problem(const Problem& p);

}  // namespace prover

#endif  // PROVER_TPTP_HPP
