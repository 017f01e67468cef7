#include "prover/proposer.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

#include "prover/saturation.hpp"
#include "prover/subsumption.hpp"
#include "prover/unify.hpp"
#include "prover/util.hpp"

namespace prover {

namespace {

// Candidate choice sets are uniform over distinct inference instances, so one
// entry per (rule, parent ids, literal positions) even when conclusions repeat.
struct Candidate {
  InferenceKind kind;
  ClauseId parent1;
  ClauseId parent2;
  Clause result;
};

void push_resolvents(const Clause& c1, const Clause& c2, std::vector<Candidate>& out) {
  for (Clause& r : resolvents(c1, c2)) {
    Candidate cand{InferenceKind::resolution, c1.id, c2.id, std::move(r)};
    out.push_back(std::move(cand));
  }
}

void push_factors(const Clause& c, std::vector<Candidate>& out) {
  for (Clause& f : factors(c)) {
    Candidate cand{InferenceKind::factoring, c.id, -1, std::move(f)};
    out.push_back(std::move(cand));
  }
}

bool subsumed_by_some(const Clause& c, const std::vector<Clause>& axioms) {
  for (const Clause& a : axioms) {
    if (order_subsumes(a, c)) return true;
  }
  return false;
}

}  // namespace

SyntheticTheorem propose_theorem(const std::vector<Clause>& axioms, int steps,
                                 std::uint64_t seed, const ProposerConfig& cfg) {
  if (axioms.empty()) throw std::invalid_argument("propose_theorem: empty axiom set");
  if (steps < 1) throw std::invalid_argument("propose_theorem: steps must be >= 1");
  if (cfg.max_restarts < 0) throw std::invalid_argument("propose_theorem: negative restarts");

  const auto n = static_cast<ClauseId>(axioms.size());
  std::vector<Clause> numbered = axioms;
  for (ClauseId i = 0; i < n; ++i) {
    numbered[i].id = i;
    numbered[i].provenance = Provenance{};
  }

  // Step 1 over the axioms alone is deterministic, so build it once. An empty
  // raw set means no walk can ever start.
  std::vector<Candidate> first_raw;
  for (ClauseId i = 0; i < n; ++i) {
    for (ClauseId j = i + 1; j < n; ++j) push_resolvents(numbered[i], numbered[j], first_raw);
    push_factors(numbered[i], first_raw);
  }
  if (first_raw.empty()) {
    throw ProposerError(ProposerError::Kind::degenerate_axioms,
                        "no resolvents or factors exist among the axioms");
  }

  auto keep = [&](const Candidate& c) {
    if (is_tautology(c.result)) return false;
    if (clause_weight(c.result) > cfg.max_conjecture_weight) return false;
    if (cfg.filter_subsumed_by_axiom && subsumed_by_some(c.result, numbered)) return false;
    return true;
  };

  std::vector<Candidate> first;
  for (const Candidate& c : first_raw) {
    if (keep(c)) first.push_back(c);
  }

  // Initial attempt plus cfg.max_restarts restarts, each on a derived seed.
  for (int attempt = 0; attempt <= cfg.max_restarts; ++attempt) {
    Rng rng(splitmix64(seed + static_cast<std::uint64_t>(attempt)));
    std::vector<WalkEntry> walk;
    walk.reserve(static_cast<std::size_t>(steps));
    bool dead = first.empty();

    for (int step = 0; step < steps && !dead; ++step) {
      std::vector<Candidate> pool;
      if (step == 0) {
        pool = first;
      } else {
        Clause last = walk.back().result;
        last.id = n + static_cast<ClauseId>(walk.size()) - 1;
        for (ClauseId i = 0; i < n; ++i) push_resolvents(last, numbered[i], pool);
        if (cfg.linear_parents_all) {
          for (std::size_t k = 0; k < walk.size(); ++k) {
            Clause earlier = walk[k].result;
            earlier.id = n + static_cast<ClauseId>(k);
            push_resolvents(last, earlier, pool);
          }
        }
        push_factors(last, pool);
        pool.erase(std::remove_if(pool.begin(), pool.end(),
                                  [&](const Candidate& c) { return !keep(c); }),
                   pool.end());
      }
      if (pool.empty()) {
        dead = true;
        break;
      }
      Candidate& pick = pool[rng.next_index(pool.size())];
      WalkEntry entry;
      entry.kind = pick.kind;
      entry.parent1 = pick.parent1;
      entry.parent2 = pick.parent2;
      entry.result = std::move(pick.result);
      entry.result.id = n + static_cast<ClauseId>(walk.size());
      walk.push_back(std::move(entry));
    }

    if (!dead) {
      SyntheticTheorem t;
      t.axioms = numbered;
      t.conjecture = walk.back().result;
      t.walk = std::move(walk);
      t.seed = seed;
      t.steps = steps;
      return t;
    }
  }

  throw ProposerError(ProposerError::Kind::dead_end,
                      "walk choice set empty after all restarts");
}

Problem make_problem(const SyntheticTheorem& t, const Signature& signature,
                     const VarNames& var_names, const std::string& name) {
  Problem p;
  p.name = name;
  p.signature = signature;
  p.var_names = var_names;
  p.axioms = t.axioms;
  p.negated_conjecture = negate_conjecture(t.conjecture, p.signature);

  VarId next = 0;
  for (const Clause& c : p.axioms) {
    for (VarId v : variables_of(c).distinct) next = std::max(next, v + 1);
  }
  p.next_var = next;
  return p;
}

bool certify_by_replay(const SyntheticTheorem& t, const Signature& signature) {
  const auto n = static_cast<ClauseId>(t.axioms.size());
  if (t.steps < 1 || t.walk.size() != static_cast<std::size_t>(t.steps)) return false;
  if (!same_literals(t.conjecture, t.walk.back().result)) return false;
  if (is_tautology(t.conjecture)) return false;

  auto clause_at = [&](ClauseId id, std::size_t step) -> const Clause* {
    if (id >= 0 && id < n) return &t.axioms[id];
    const ClauseId w = id - n;
    if (id >= n && w < static_cast<ClauseId>(step)) return &t.walk[w].result;
    return nullptr;  // forward reference or out of range
  };

  for (std::size_t k = 0; k < t.walk.size(); ++k) {
    const WalkEntry& e = t.walk[k];
    const Clause* p1 = clause_at(e.parent1, k);
    if (p1 == nullptr) return false;

    if (k > 0) {
      const ClauseId last_id = n + static_cast<ClauseId>(k) - 1;
      if (e.parent1 != last_id && e.parent2 != last_id) return false;  // linearity
    }

    std::vector<Clause> candidates;
    if (e.kind == InferenceKind::resolution) {
      const Clause* p2 = clause_at(e.parent2, k);
      if (p2 == nullptr) return false;
      candidates = resolvents(*p1, *p2);
    } else if (e.kind == InferenceKind::factoring) {
      if (e.parent2 != -1) return false;
      candidates = factors(*p1);
    } else {
      return false;
    }

    bool matched = false;
    for (const Clause& c : candidates) {
      if (variant_equal(c, e.result)) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }

  // Entailment finish: the conjecture must collapse to the empty clause
  // against its own Skolemized negation by unit resolution. The choice of
  // unit matters (a literal can unify with the wrong one and strand the
  // rest), so backtrack; the units are ground, which makes the binding
  // equations order-independent, so branching only on which unit consumes
  // the first remaining literal is still complete.
  Signature sig = signature;
  const std::vector<Clause> units = negate_conjecture(t.conjecture, sig);
  std::function<bool(const Clause&)> close = [&](const Clause& goal) -> bool {
    if (goal.literals.empty()) return true;
    const Literal& first = goal.literals.front();
    for (const Clause& u : units) {
      const Literal& ul = u.literals.front();
      if (ul.negated == first.negated || ul.predicate != first.predicate) continue;
      const UnifyResult r = mgu(first, ul);
      if (!r.ok()) continue;
      std::vector<Literal> rest;
      rest.reserve(goal.literals.size() - 1);
      for (std::size_t i = 1; i < goal.literals.size(); ++i) {
        rest.push_back(r.sub.apply(goal.literals[i]));
      }
      if (close(make_clause(std::move(rest)))) return true;
    }
    return false;
  };
  return close(t.conjecture);
}

}  // namespace prover
