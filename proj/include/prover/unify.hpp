/**
 * @file unify.hpp
 * Unification and the generating rules of the resolution calculus: most
 * general unifiers (with occurs check), substitution application, binary
 * resolvents and factors. All functions are pure.
 */
#ifndef PROVER_UNIFY_HPP
#define PROVER_UNIFY_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "prover/fol.hpp"

namespace prover {

/// Finite map from variables to terms, built by unification. Bindings may
/// reference other bound variables; apply() dereferences chains, which
/// terminate because the occurs check keeps the binding graph acyclic.
class Substitution {
 public:
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  const Term* lookup(VarId v) const {
    auto it = bindings_.find(v);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  void bind(VarId v, Term t) { bindings_[v] = std::move(t); }

  Term apply(const Term& t) const;
  Literal apply(const Literal& l) const;
  Clause apply(const Clause& c) const;

  /// Fully-resolved view: every binding with chains followed to the end, so
  /// no domain variable occurs in any image term.
  std::unordered_map<VarId, Term> resolved() const;

  const std::unordered_map<VarId, Term>& bindings() const { return bindings_; }

 private:
  std::unordered_map<VarId, Term> bindings_;
};

enum class UnifyFail : std::uint8_t { none, clash, occurs_check };

struct UnifyResult {
  Substitution sub;
  UnifyFail fail = UnifyFail::none;

  bool ok() const { return fail == UnifyFail::none; }
};

/// Robinson unification with occurs check. Callers resolving across clauses
/// must rename the clauses apart first.
UnifyResult mgu(const Term& a, const Term& b);

/// Unifies two literals of the same predicate and sign-independent shape;
/// fails with clash when predicates differ.
UnifyResult mgu(const Literal& a, const Literal& b);

/// One-way matching: finds sub with pattern*sub == target, never binding
/// variables of the target. The workhorse of subsumption.
bool match_term(const Term& pattern, const Term& target, Substitution& sub);
bool match_literal(const Literal& pattern, const Literal& target, Substitution& sub);

/// All binary resolvents of c1 and c2: one conclusion per complementary
/// literal pair with a successful mgu, renamed apart internally. Tautological
/// conclusions are dropped; conclusions are variable-canonicalized, with
/// provenance recording the parent ids and literal positions.
std::vector<Clause> resolvents(const Clause& c1, const Clause& c2);

/// All factors of c: one conclusion per unordered same-sign same-predicate
/// literal pair with a successful mgu, the two literals merged. Tautologies
/// dropped, conclusions canonicalized.
std::vector<Clause> factors(const Clause& c);

}  // namespace prover

#endif  // PROVER_UNIFY_HPP
