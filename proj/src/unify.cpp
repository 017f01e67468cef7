/**
 * @file unify.cpp
 * Robinson unification, matching, resolvents and factors.
 */
#include "prover/unify.hpp"

#include <algorithm>

namespace prover {

Term Substitution::apply(const Term& t) const {
  if (t.is_variable) {
    const Term* bound = lookup(t.var_id());
    if (!bound) return t;
    return apply(*bound);
  }
  if (t.args.empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(apply(a));
  return Term::application(t.functor(), std::move(args));
}

Literal Substitution::apply(const Literal& l) const {
  Literal out = l;
  for (auto& t : out.args) t = apply(t);
  return out;
}

Clause Substitution::apply(const Clause& c) const {
  std::vector<Literal> lits;
  lits.reserve(c.literals.size());
  for (const auto& l : c.literals) lits.push_back(apply(l));
  Clause out = make_clause(std::move(lits));
  out.id = c.id;
  out.birth_step = c.birth_step;
  out.provenance = c.provenance;
  return out;
}

std::unordered_map<VarId, Term> Substitution::resolved() const {
  std::unordered_map<VarId, Term> out;
  for (const auto& [v, t] : bindings_) out.emplace(v, apply(t));
  return out;
}

namespace {

// Follows variable bindings until an unbound variable or an application.
const Term* dereference(const Term* t, const Substitution& sub) {
  while (t->is_variable) {
    const Term* bound = sub.lookup(t->var_id());
    if (!bound) return t;
    t = bound;
  }
  return t;
}

bool occurs(VarId v, const Term& t, const Substitution& sub) {
  const Term* d = dereference(&t, sub);
  if (d->is_variable) return d->var_id() == v;
  for (const auto& a : d->args) {
    if (occurs(v, a, sub)) return true;
  }
  return false;
}

UnifyFail unify_terms(const Term& a, const Term& b, Substitution& sub) {
  const Term* ta = dereference(&a, sub);
  const Term* tb = dereference(&b, sub);
  if (ta->is_variable && tb->is_variable && ta->var_id() == tb->var_id()) return UnifyFail::none;
  if (ta->is_variable) {
    if (occurs(ta->var_id(), *tb, sub)) return UnifyFail::occurs_check;
    sub.bind(ta->var_id(), *tb);
    return UnifyFail::none;
  }
  if (tb->is_variable) {
    if (occurs(tb->var_id(), *ta, sub)) return UnifyFail::occurs_check;
    sub.bind(tb->var_id(), *ta);
    return UnifyFail::none;
  }
  if (ta->functor() != tb->functor()) return UnifyFail::clash;
  for (std::size_t i = 0; i < ta->args.size(); ++i) {
    const UnifyFail f = unify_terms(ta->args[i], tb->args[i], sub);
    if (f != UnifyFail::none) return f;
  }
  return UnifyFail::none;
}

}  // namespace

UnifyResult mgu(const Term& a, const Term& b) {
  UnifyResult r;
  r.fail = unify_terms(a, b, r.sub);
  if (!r.ok()) r.sub = Substitution{};
  return r;
}

UnifyResult mgu(const Literal& a, const Literal& b) {
  UnifyResult r;
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) {
    r.fail = UnifyFail::clash;
    return r;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    r.fail = unify_terms(a.args[i], b.args[i], r.sub);
    if (!r.ok()) {
      r.sub = Substitution{};
      return r;
    }
  }
  return r;
}

bool match_term(const Term& pattern, const Term& target, Substitution& sub) {
  if (pattern.is_variable) {
    if (const Term* bound = sub.lookup(pattern.var_id())) return *bound == target;
    sub.bind(pattern.var_id(), target);
    return true;
  }
  if (target.is_variable) return false;
  if (pattern.functor() != target.functor()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match_term(pattern.args[i], target.args[i], sub)) return false;
  }
  return true;
}

bool match_literal(const Literal& pattern, const Literal& target, Substitution& sub) {
  if (pattern.negated != target.negated || pattern.predicate != target.predicate) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match_term(pattern.args[i], target.args[i], sub)) return false;
  }
  return true;
}

std::vector<Clause> resolvents(const Clause& c1, const Clause& c2) {
  std::vector<Clause> out;
  if (c1.empty() || c2.empty()) return out;

  std::unordered_set<VarId> reserved;
  collect_variables(c1, reserved);
  const Clause c2r = rename_apart(c2, reserved);

  for (std::size_t i = 0; i < c1.literals.size(); ++i) {
    for (std::size_t j = 0; j < c2r.literals.size(); ++j) {
      const Literal& l1 = c1.literals[i];
      const Literal& l2 = c2r.literals[j];
      if (l1.negated == l2.negated || l1.predicate != l2.predicate) continue;
      UnifyResult u = mgu(Literal{false, l1.predicate, l1.args},
                          Literal{false, l2.predicate, l2.args});
      if (!u.ok()) continue;

      std::vector<Literal> lits;
      lits.reserve(c1.literals.size() + c2r.literals.size() - 2);
      for (std::size_t k = 0; k < c1.literals.size(); ++k) {
        if (k != i) lits.push_back(u.sub.apply(c1.literals[k]));
      }
      for (std::size_t k = 0; k < c2r.literals.size(); ++k) {
        if (k != j) lits.push_back(u.sub.apply(c2r.literals[k]));
      }
      Clause conclusion = canonicalize_variables(make_clause(std::move(lits)));
      if (is_tautology(conclusion)) continue;
      conclusion.provenance.kind = InferenceKind::resolution;
      conclusion.provenance.parent1 = c1.id;
      conclusion.provenance.parent2 = c2.id;
      conclusion.provenance.pos1 = static_cast<std::int32_t>(i);
      conclusion.provenance.pos2 = static_cast<std::int32_t>(j);
      out.push_back(std::move(conclusion));
    }
  }
  return out;
}

std::vector<Clause> factors(const Clause& c) {
  std::vector<Clause> out;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    for (std::size_t j = i + 1; j < c.literals.size(); ++j) {
      const Literal& l1 = c.literals[i];
      const Literal& l2 = c.literals[j];
      if (l1.negated != l2.negated || l1.predicate != l2.predicate) continue;
      UnifyResult u = mgu(Literal{false, l1.predicate, l1.args},
                          Literal{false, l2.predicate, l2.args});
      if (!u.ok()) continue;

      std::vector<Literal> lits;
      lits.reserve(c.literals.size() - 1);
      for (std::size_t k = 0; k < c.literals.size(); ++k) {
        if (k == j) continue;  // merged into position i
        lits.push_back(u.sub.apply(c.literals[k]));
      }
      Clause conclusion = canonicalize_variables(make_clause(std::move(lits)));
      if (is_tautology(conclusion)) continue;
      conclusion.provenance.kind = InferenceKind::factoring;
      conclusion.provenance.parent1 = c.id;
      conclusion.provenance.pos1 = static_cast<std::int32_t>(i);
      conclusion.provenance.pos2 = static_cast<std::int32_t>(j);
      out.push_back(std::move(conclusion));
    }
  }
  return out;
}

}  // namespace prover
