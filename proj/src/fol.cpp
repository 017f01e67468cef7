/**
 * @file fol.cpp
 * Implements the structural clause utilities.
 */
#include "prover/fol.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace prover {

SymbolId Signature::add_predicate(const std::string& name, int arity) {
  auto it = predicate_index_.find(name);
  if (it != predicate_index_.end()) {
    if (predicates_[it->second].arity != arity) {
      throw std::logic_error("predicate arity mismatch for symbol '" + name + "'");
    }
    return it->second;
  }
  const SymbolId id = static_cast<SymbolId>(predicates_.size());
  predicates_.push_back(Symbol{name, arity, SymbolKind::predicate});
  predicate_index_.emplace(name, id);
  return id;
}

SymbolId Signature::add_functor(const std::string& name, int arity) {
  auto it = functor_index_.find(name);
  if (it != functor_index_.end()) {
    if (functors_[it->second].arity != arity) {
      throw std::logic_error("functor arity mismatch for symbol '" + name + "'");
    }
    return it->second;
  }
  const SymbolId id = static_cast<SymbolId>(functors_.size());
  functors_.push_back(Symbol{name, arity, SymbolKind::functor});
  functor_index_.emplace(name, id);
  return id;
}

std::optional<SymbolId> Signature::find_predicate(const std::string& name) const {
  auto it = predicate_index_.find(name);
  if (it == predicate_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<SymbolId> Signature::find_functor(const std::string& name) const {
  auto it = functor_index_.find(name);
  if (it == functor_index_.end()) return std::nullopt;
  return it->second;
}

SymbolId Signature::fresh_constant(const std::string& prefix) {
  for (int i = 0;; ++i) {
    const std::string name = prefix + std::to_string(i);
    if (!functor_index_.count(name)) return add_functor(name, 0);
  }
}

Clause make_clause(std::vector<Literal> literals) {
  Clause c;
  c.literals.reserve(literals.size());
  for (auto& lit : literals) {
    bool duplicate = false;
    for (const auto& kept : c.literals) {
      if (kept == lit) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) c.literals.push_back(std::move(lit));
  }
  return c;
}

namespace {

// Nodes contributed by a term: one per functor application plus one per
// variable occurrence.
int term_nodes(const Term& t) {
  if (t.is_variable) return 1;
  int n = 1;
  for (const auto& a : t.args) n += term_nodes(a);
  return n;
}

}  // namespace

int clause_weight(const Clause& c) {
  int w = 1;  // clause node
  for (const auto& lit : c.literals) {
    w += 2;  // literal node + atomic formula node
    for (const auto& t : lit.args) w += term_nodes(t);
  }
  return w;
}

bool is_tautology(const Clause& c) {
  for (const auto& neg : c.literals) {
    if (!neg.negated) continue;
    for (const auto& pos : c.literals) {
      if (pos.negated) continue;
      if (neg.predicate == pos.predicate && neg.args == pos.args) return true;
    }
  }
  return false;
}

void collect_variables(const Term& t, std::unordered_set<VarId>& out) {
  if (t.is_variable) {
    out.insert(t.var_id());
    return;
  }
  for (const auto& a : t.args) collect_variables(a, out);
}

void collect_variables(const Clause& c, std::unordered_set<VarId>& out) {
  for (const auto& lit : c.literals) {
    for (const auto& t : lit.args) collect_variables(t, out);
  }
}

namespace {

int count_var_occurrences(const Term& t) {
  if (t.is_variable) return 1;
  int n = 0;
  for (const auto& a : t.args) n += count_var_occurrences(a);
  return n;
}

}  // namespace

VariableCount variables_of(const Clause& c) {
  VariableCount vc;
  collect_variables(c, vc.distinct);
  for (const auto& lit : c.literals) {
    for (const auto& t : lit.args) vc.total += count_var_occurrences(t);
  }
  return vc;
}

VarId max_variable(const Clause& c) {
  std::unordered_set<VarId> vars;
  collect_variables(c, vars);
  VarId m = -1;
  for (VarId v : vars) m = std::max(m, v);
  return m;
}

namespace {

Term remap_term(const Term& t, const std::unordered_map<VarId, VarId>& map) {
  if (t.is_variable) return Term::variable(map.at(t.var_id()));
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(remap_term(a, map));
  return Term::application(t.functor(), std::move(args));
}

// Applies a variable-to-variable remapping built on the fly by `fresh`.
Clause remap_clause(const Clause& c, const std::function<VarId(VarId)>& fresh) {
  std::unordered_map<VarId, VarId> map;
  // First-occurrence order, so renamings are deterministic.
  for (const auto& lit : c.literals) {
    for (const auto& t : lit.args) {
      std::vector<const Term*> stack{&t};
      while (!stack.empty()) {
        const Term* cur = stack.back();
        stack.pop_back();
        if (cur->is_variable) {
          if (!map.count(cur->var_id())) map.emplace(cur->var_id(), fresh(cur->var_id()));
        } else {
          for (auto it = cur->args.rbegin(); it != cur->args.rend(); ++it) stack.push_back(&*it);
        }
      }
    }
  }
  Clause out = c;
  for (auto& lit : out.literals) {
    for (auto& t : lit.args) t = remap_term(t, map);
  }
  return out;
}

}  // namespace

Clause rename_apart(const Clause& c, const std::unordered_set<VarId>& reserved) {
  VarId next = -1;
  for (VarId v : reserved) next = std::max(next, v);
  next = std::max(next, max_variable(c));
  ++next;
  VarId counter = next;
  return remap_clause(c, [&counter](VarId) { return counter++; });
}

Clause rename_apart(const Clause& c, VarId& next_fresh) {
  return remap_clause(c, [&next_fresh](VarId) { return next_fresh++; });
}

Clause canonicalize_variables(const Clause& c) {
  VarId counter = 0;
  return remap_clause(c, [&counter](VarId) { return counter++; });
}

namespace {

// -1 / 0 / +1 three-way compare.
int term_cmp(const Term& a, const Term& b) {
  if (a.is_variable != b.is_variable) return a.is_variable ? -1 : 1;
  if (a.sym != b.sym) return a.sym < b.sym ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size() && i < b.args.size(); ++i) {
    const int c = term_cmp(a.args[i], b.args[i]);
    if (c != 0) return c;
  }
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  return 0;
}

int literal_cmp(const Literal& a, const Literal& b) {
  if (a.negated != b.negated) return a.negated ? 1 : -1;
  if (a.predicate != b.predicate) return a.predicate < b.predicate ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size() && i < b.args.size(); ++i) {
    const int c = term_cmp(a.args[i], b.args[i]);
    if (c != 0) return c;
  }
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  return 0;
}

}  // namespace

bool literal_less(const Literal& a, const Literal& b) { return literal_cmp(a, b) < 0; }

bool same_literals(const Clause& a, const Clause& b) {
  if (a.literals.size() != b.literals.size()) return false;
  std::vector<Literal> la = a.literals;
  std::vector<Literal> lb = b.literals;
  std::sort(la.begin(), la.end(), literal_less);
  std::sort(lb.begin(), lb.end(), literal_less);
  return la == lb;
}

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t term_hash(const Term& t) {
  std::size_t h = t.is_variable ? 0x517cc1b727220a95ULL : 0x2545f4914f6cdd1dULL;
  h = hash_combine(h, static_cast<std::size_t>(t.sym));
  for (const auto& a : t.args) h = hash_combine(h, term_hash(a));
  return h;
}

std::size_t literal_hash(const Literal& l) {
  std::size_t h = l.negated ? 0x9e3779b9ULL : 0x85ebca6bULL;
  h = hash_combine(h, static_cast<std::size_t>(l.predicate));
  for (const auto& t : l.args) h = hash_combine(h, term_hash(t));
  return h;
}

}  // namespace

std::size_t clause_hash(const Clause& c) {
  std::vector<Literal> lits = c.literals;
  std::sort(lits.begin(), lits.end(), literal_less);
  std::size_t h = 0x811c9dc5ULL;
  for (const auto& l : lits) h = hash_combine(h, literal_hash(l));
  return h;
}

}  // namespace prover
