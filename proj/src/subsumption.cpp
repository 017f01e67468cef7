/**
 * @file subsumption.cpp
 * Backtracking matchers for theta-subsumption and variant equality.
 */
#include "prover/subsumption.hpp"

#include <unordered_map>
#include <vector>

namespace prover {

namespace {

// One-way matcher with an undo trail so backtracking does not copy maps.
// When restrict_to_renaming is set, bindings must be injective var -> var.
struct Matcher {
  bool restrict_to_renaming = false;
  std::unordered_map<VarId, Term> bind;
  std::unordered_map<VarId, VarId> inverse;  // only used for renamings
  std::vector<VarId> trail;

  std::size_t mark() const { return trail.size(); }

  void undo(std::size_t m) {
    while (trail.size() > m) {
      const VarId v = trail.back();
      trail.pop_back();
      if (restrict_to_renaming) {
        auto it = bind.find(v);
        if (it != bind.end() && it->second.is_variable) inverse.erase(it->second.var_id());
      }
      bind.erase(v);
    }
  }

  bool match(const Term& pattern, const Term& target) {
    if (pattern.is_variable) {
      auto it = bind.find(pattern.var_id());
      if (it != bind.end()) return it->second == target;
      if (restrict_to_renaming) {
        if (!target.is_variable) return false;
        if (inverse.count(target.var_id())) return false;
        inverse.emplace(target.var_id(), pattern.var_id());
      }
      bind.emplace(pattern.var_id(), target);
      trail.push_back(pattern.var_id());
      return true;
    }
    if (target.is_variable) return false;
    if (pattern.functor() != target.functor()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
      if (!match(pattern.args[i], target.args[i])) return false;
    }
    return true;
  }

  bool match(const Literal& pattern, const Literal& target) {
    if (pattern.negated != target.negated || pattern.predicate != target.predicate) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
      if (!match(pattern.args[i], target.args[i])) return false;
    }
    return true;
  }
};

// Depth-first search mapping each literal of c1 to a distinct literal of c2
// under one consistent matcher state.
struct SubsumptionSearch {
  const Clause& c1;
  const Clause& c2;
  Matcher matcher;
  std::vector<std::vector<std::size_t>> candidates;  // per c1 literal
  std::vector<bool> used;

  SubsumptionSearch(const Clause& a, const Clause& b, bool renaming_only) : c1(a), c2(b) {
    matcher.restrict_to_renaming = renaming_only;
    candidates.resize(c1.literals.size());
    used.assign(c2.literals.size(), false);
    for (std::size_t i = 0; i < c1.literals.size(); ++i) {
      for (std::size_t j = 0; j < c2.literals.size(); ++j) {
        if (c1.literals[i].negated == c2.literals[j].negated &&
            c1.literals[i].predicate == c2.literals[j].predicate) {
          candidates[i].push_back(j);
        }
      }
    }
  }

  bool feasible() const {
    for (const auto& cs : candidates) {
      if (cs.empty()) return false;
    }
    return true;
  }

  bool run(std::size_t i) {
    if (i == c1.literals.size()) return true;
    for (const std::size_t j : candidates[i]) {
      if (used[j]) continue;
      const std::size_t m = matcher.mark();
      if (matcher.match(c1.literals[i], c2.literals[j])) {
        used[j] = true;
        if (run(i + 1)) return true;
        used[j] = false;
      }
      matcher.undo(m);
    }
    return false;
  }
};

}  // namespace

bool theta_subsumes(const Clause& c1, const Clause& c2) {
  if (c1.empty()) return true;
  if (c1.literals.size() > c2.literals.size()) return false;  // injective mapping impossible
  SubsumptionSearch search(c1, c2, /*renaming_only=*/false);
  if (!search.feasible()) return false;
  return search.run(0);
}

bool order_subsumes(const Clause& c1, const Clause& c2) {
  return c1.literals.size() <= c2.literals.size() && theta_subsumes(c1, c2);
}

bool variant_equal(const Clause& c1, const Clause& c2) {
  if (c1.literals.size() != c2.literals.size()) return false;
  SubsumptionSearch search(c1, c2, /*renaming_only=*/true);
  if (!search.feasible()) return false;
  return search.run(0);
}

}  // namespace prover
