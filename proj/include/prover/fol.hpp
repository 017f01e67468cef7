/**
 * @file fol.hpp
 * Symbolic data model for CNF first-order logic without equality: signatures,
 * terms, literals, clauses, plus the structural utilities used everywhere else
 * (clause weight, renaming, tautology check, variable counting).
 *
 * All types are plain values, immutable by convention after construction, and
 * safe to share across threads. Fresh-variable generation always goes through
 * an explicit counter or reserved set supplied by the caller.
 */
#ifndef PROVER_FOL_HPP
#define PROVER_FOL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace prover {

using SymbolId = std::int32_t;
using VarId = std::int32_t;
using ClauseId = std::int32_t;

enum class SymbolKind : std::uint8_t { predicate, functor };

struct Symbol {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::functor;
};

/// Append-only registry of predicate and functor symbols. Predicates and
/// functors live in separate id spaces. One arity per (name, kind); callers
/// that need nicer diagnostics (the parser) check with find() first.
class Signature {
 public:
  SymbolId add_predicate(const std::string& name, int arity);
  SymbolId add_functor(const std::string& name, int arity);

  std::optional<SymbolId> find_predicate(const std::string& name) const;
  std::optional<SymbolId> find_functor(const std::string& name) const;

  const Symbol& predicate(SymbolId id) const { return predicates_.at(id); }
  const Symbol& functor(SymbolId id) const { return functors_.at(id); }

  std::size_t predicate_count() const { return predicates_.size(); }
  std::size_t functor_count() const { return functors_.size(); }

  /// Interns a new 0-ary functor named prefix0, prefix1, ... choosing the
  /// first index whose name is not taken yet.
  SymbolId fresh_constant(const std::string& prefix);

 private:
  std::vector<Symbol> predicates_;
  std::vector<Symbol> functors_;
  std::unordered_map<std::string, SymbolId> predicate_index_;
  std::unordered_map<std::string, SymbolId> functor_index_;
};

/// Display names remembered for parsed variables, keyed by variable id.
using VarNames = std::unordered_map<VarId, std::string>;

/// A term is either a variable or a functor application (constants are 0-ary
/// applications). Argument count always equals the functor arity.
struct Term {
  bool is_variable = false;
  std::int32_t sym = 0;  // variable id, or functor id
  std::vector<Term> args;

  static Term variable(VarId v) { return Term{true, v, {}}; }
  static Term application(SymbolId f, std::vector<Term> a = {}) {
    return Term{false, f, std::move(a)};
  }

  VarId var_id() const { return sym; }
  SymbolId functor() const { return sym; }

  bool operator==(const Term& o) const {
    return is_variable == o.is_variable && sym == o.sym && args == o.args;
  }
};

struct Literal {
  bool negated = false;
  SymbolId predicate = 0;
  std::vector<Term> args;

  bool operator==(const Literal& o) const {
    return negated == o.negated && predicate == o.predicate && args == o.args;
  }
  /// Same predicate and arguments, opposite sign.
  bool complements(const Literal& o) const {
    return negated != o.negated && predicate == o.predicate && args == o.args;
  }
};

enum class InferenceKind : std::uint8_t { input, resolution, factoring };

/// Where a clause came from. For resolution: parent1/pos1 and parent2/pos2
/// name the parents and the resolved-upon literal position in each. For
/// factoring: parent1, with pos1/pos2 the two merged literal positions.
struct Provenance {
  InferenceKind kind = InferenceKind::input;
  ClauseId parent1 = -1;
  ClauseId parent2 = -1;
  std::int32_t pos1 = -1;
  std::int32_t pos2 = -1;

  /// 0 for inputs, 1 for factoring, 2 for resolution.
  int premise_count() const {
    switch (kind) {
      case InferenceKind::input: return 0;
      case InferenceKind::factoring: return 1;
      case InferenceKind::resolution: return 2;
    }
    return 0;
  }
};

/// A disjunction of literals; an empty literal list is the empty clause
/// (logical false). Literals are stored in order but clause identity is
/// order-insensitive (see same_literals). Exact duplicate literals are merged
/// at construction; unifiable-but-distinct duplicates are left for factoring.
struct Clause {
  std::vector<Literal> literals;
  ClauseId id = -1;
  std::int32_t birth_step = 0;
  Provenance provenance;

  bool empty() const { return literals.empty(); }
  std::size_t size() const { return literals.size(); }
};

/// Builds a clause from literals, dropping exact syntactic duplicates while
/// preserving first-occurrence order.
Clause make_clause(std::vector<Literal> literals);

/// Node count of the clause tree: 1 clause node, 1 per literal, 1 per atomic
/// formula, 1 per functor application (constants included), 1 per variable
/// occurrence. Empty clause has weight 1.
int clause_weight(const Clause& c);

/// True iff some negative literal is syntactically identical (predicate and
/// argument terms) to some positive literal of the same clause.
bool is_tautology(const Clause& c);

struct VariableCount {
  std::unordered_set<VarId> distinct;
  int total = 0;
};

VariableCount variables_of(const Clause& c);

void collect_variables(const Term& t, std::unordered_set<VarId>& out);
void collect_variables(const Clause& c, std::unordered_set<VarId>& out);

/// Largest variable id occurring in the clause, or -1 if ground.
VarId max_variable(const Clause& c);

/// Returns a variant of the clause whose variables avoid `reserved`. Distinct
/// variables are remapped, in order of first occurrence, to consecutive fresh
/// ids starting past both the reserved set and the clause's own ids.
Clause rename_apart(const Clause& c, const std::unordered_set<VarId>& reserved);

/// Variant renaming that draws fresh ids from an explicit counter; the
/// counter advances by the number of distinct variables.
Clause rename_apart(const Clause& c, VarId& next_fresh);

/// Renumbers variables to 0..k-1 in order of first occurrence. Preserves the
/// variant class; used to keep derived clauses tidy and comparable.
Clause canonicalize_variables(const Clause& c);

/// Total syntactic order on literals (sign, predicate, then argument terms).
bool literal_less(const Literal& a, const Literal& b);

/// Order-insensitive structural equality: literal multisets match exactly.
bool same_literals(const Clause& a, const Clause& b);

/// Hash consistent with same_literals (literal order does not matter).
std::size_t clause_hash(const Clause& c);

}  // namespace prover

#endif  // PROVER_FOL_HPP
