/**
 * @file saturation.cpp
 * Given-clause loop with lazily-deleted binary heaps for the two queues.
 */
#include "prover/saturation.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "prover/subsumption.hpp"
#include "prover/tptp.hpp"
#include "prover/unify.hpp"

namespace prover {

namespace {

struct AgeKey {
  std::int32_t birth;
  ClauseId id;
  bool operator>(const AgeKey& o) const {
    if (birth != o.birth) return birth > o.birth;
    return id > o.id;
  }
};

struct CostKey {
  double cost;
  std::int32_t birth;
  ClauseId id;
  bool operator>(const CostKey& o) const {
    if (cost != o.cost) return cost > o.cost;
    if (birth != o.birth) return birth > o.birth;
    return id > o.id;
  }
};

// Two heaps sharing one aliveness set; removal is lazy (dead entries are
// skipped at pop time), which keeps arbitrary removal O(1).
class UnprocessedQueues {
 public:
  void insert(ClauseId id, std::int32_t birth, double cost) {
    alive_.insert(id);
    age_.push(AgeKey{birth, id});
    cost_.push(CostKey{cost, birth, id});
  }

  bool empty() const { return alive_.empty(); }

  /// Pops the minimum of the requested queue and removes it from both.
  ClauseId pop(bool from_age) {
    if (from_age) {
      for (;;) {
        const AgeKey k = age_.top();
        age_.pop();
        if (alive_.erase(k.id)) return k.id;
      }
    }
    for (;;) {
      const CostKey k = cost_.top();
      cost_.pop();
      if (alive_.erase(k.id)) return k.id;
    }
  }

  /// Both heaps must still contain every live clause (lazy deletion only
  /// keeps extra dead entries around, never loses live ones).
  bool coherent() const {
    std::unordered_set<ClauseId> in_age, in_cost;
    for (const auto& k : age_container()) in_age.insert(k.id);
    for (const auto& k : cost_container()) in_cost.insert(k.id);
    for (const ClauseId id : alive_) {
      if (!in_age.count(id) || !in_cost.count(id)) return false;
    }
    return true;
  }

 private:
  template <typename T, typename C>
  struct ExposedQueue : std::priority_queue<T, std::vector<T>, C> {
    const std::vector<T>& container() const { return this->c; }
  };

  const std::vector<AgeKey>& age_container() const { return age_.container(); }
  const std::vector<CostKey>& cost_container() const { return cost_.container(); }

  ExposedQueue<AgeKey, std::greater<AgeKey>> age_;
  ExposedQueue<CostKey, std::greater<CostKey>> cost_;
  std::unordered_set<ClauseId> alive_;
};

std::vector<ClauseId> ancestors_of(ClauseId start, const std::vector<Clause>& log) {
  std::vector<ClauseId> stack{start};
  std::unordered_set<ClauseId> seen;
  while (!stack.empty()) {
    const ClauseId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const Provenance& prov = log[static_cast<std::size_t>(id)].provenance;
    if (prov.parent1 >= 0) stack.push_back(prov.parent1);
    if (prov.parent2 >= 0) stack.push_back(prov.parent2);
  }
  std::vector<ClauseId> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SaturationResult saturate(const std::vector<Clause>& initial, CostFunction& cost_fn,
                          AgeCostRatio ratio, const Budget& budget,
                          const SaturationOptions& options) {
  if (initial.empty()) throw std::invalid_argument("saturate: initial clause set is empty");
  if (ratio.age < 1 || ratio.cost < 1) {
    throw std::invalid_argument("saturate: age-cost ratio components must be positive");
  }
  if (budget.max_generated < 0 || budget.max_steps < 0 || budget.max_seconds < 0.0) {
    throw std::invalid_argument("saturate: budget fields must be non-negative");
  }

  const auto start_time = std::chrono::steady_clock::now();
  SaturationResult result;
  result.initial_count = initial.size();

  // The engine owns its copies; ids are assigned in creation order.
  std::vector<Clause>& log = result.all_generated;
  log.reserve(initial.size() + 1024);
  for (const Clause& c : initial) {
    Clause copy = c;
    copy.id = static_cast<ClauseId>(log.size());
    copy.birth_step = 0;
    copy.provenance = Provenance{};
    log.push_back(std::move(copy));
  }

  cost_fn.prepare(initial);
  ProblemContext ctx;
  ctx.initial = &initial;

  UnprocessedQueues queues;
  for (const Clause& c : log) {
    ctx.step = c.birth_step;
    queues.insert(c.id, c.birth_step, cost_fn.cost(c, ctx));
  }

  std::vector<ClauseId> processed;        // insertion order
  std::vector<char> removed_from_processed;  // indexed by clause id
  removed_from_processed.resize(log.size(), 0);

  auto elapsed = [&start_time] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  };
  auto finish = [&](SaturationStatus status) {
    result.status = status;
    result.stats.elapsed_seconds = elapsed();
    return result;
  };

  const int cycle = ratio.age + ratio.cost;
  int schedule = 0;  // advances once per processed clause, as in the pseudocode

  while (!queues.empty()) {
    if (budget.max_seconds > 0.0 && elapsed() > budget.max_seconds) {
      return finish(SaturationStatus::budget_exhausted);
    }
    if (budget.max_steps > 0 && result.stats.steps >= budget.max_steps) {
      return finish(SaturationStatus::budget_exhausted);
    }
    if (options.check_invariants && !queues.coherent()) {
      throw std::logic_error("saturate: queue coherence violated");
    }

    const bool from_age = (schedule % cycle) < ratio.age;
    const ClauseId selected_id = queues.pop(from_age);
    const Clause& selected = log[static_cast<std::size_t>(selected_id)];
    ++result.stats.steps;

    if (selected.empty()) {
      result.empty_clause_id = selected_id;
      result.proof_clauses = ancestors_of(selected_id, log);
      return finish(SaturationStatus::refutation_found);
    }

    // Forward subsumption: drop the selection if some processed clause
    // order-subsumes it. The schedule does not advance on a discard.
    bool subsumed = false;
    for (const ClauseId pid : processed) {
      if (removed_from_processed[static_cast<std::size_t>(pid)]) continue;
      if (order_subsumes(log[static_cast<std::size_t>(pid)], selected)) {
        subsumed = true;
        break;
      }
    }
    if (subsumed) {
      ++result.stats.discarded_count;
      continue;
    }

    // Backward subsumption: retire processed clauses the selection
    // order-subsumes.
    for (const ClauseId pid : processed) {
      if (removed_from_processed[static_cast<std::size_t>(pid)]) continue;
      if (order_subsumes(selected, log[static_cast<std::size_t>(pid)])) {
        removed_from_processed[static_cast<std::size_t>(pid)] = 1;
      }
    }

    // Generate factors of the selection and resolutions against the
    // remaining processed clauses. Tautologies are dropped inside
    // factors()/resolvents().
    const std::int32_t birth = schedule + 1;
    std::vector<Clause> fresh = factors(selected);
    for (const ClauseId pid : processed) {
      if (removed_from_processed[static_cast<std::size_t>(pid)]) continue;
      std::vector<Clause> rs = resolvents(selected, log[static_cast<std::size_t>(pid)]);
      fresh.insert(fresh.end(), std::make_move_iterator(rs.begin()),
                   std::make_move_iterator(rs.end()));
    }
    for (Clause& c : fresh) {
      c.id = static_cast<ClauseId>(log.size());
      c.birth_step = birth;
      ctx.step = birth;
      const double cost = cost_fn.cost(c, ctx);
      queues.insert(c.id, birth, cost);
      log.push_back(std::move(c));
      removed_from_processed.push_back(0);
      ++result.stats.generated_count;
    }

    processed.push_back(selected_id);
    ++result.stats.processed_count;
    ++schedule;

    if (result.stats.generated_count > budget.max_generated) {
      return finish(SaturationStatus::budget_exhausted);
    }
  }

  return finish(SaturationStatus::saturated);
}

std::vector<ClauseId> proof_ancestors(const SaturationResult& result) {
  if (result.status != SaturationStatus::refutation_found) {
    throw std::logic_error("proof_ancestors: no refutation in this result");
  }
  return ancestors_of(result.empty_clause_id, result.all_generated);
}

std::vector<Clause> negate_conjecture(const Clause& conjecture, Signature& signature) {
  if (conjecture.empty()) {
    throw std::invalid_argument("negate_conjecture: conjecture clause is empty");
  }
  std::unordered_set<VarId> vars;
  collect_variables(conjecture, vars);
  std::vector<VarId> ordered(vars.begin(), vars.end());
  std::sort(ordered.begin(), ordered.end());

  Substitution skolemize;
  for (const VarId v : ordered) {
    skolemize.bind(v, Term::application(signature.fresh_constant("sk")));
  }

  std::vector<Clause> out;
  out.reserve(conjecture.literals.size());
  for (const Literal& lit : conjecture.literals) {
    Literal negated = skolemize.apply(lit);
    negated.negated = !negated.negated;
    Clause unit = make_clause({std::move(negated)});
    out.push_back(std::move(unit));
  }
  return out;
}

std::string proof_trace(const SaturationResult& result, const Signature& sig,
                        const VarNames* names) {
  std::string out;
  for (const ClauseId id : result.proof_clauses) {
    const Clause& c = result.all_generated[static_cast<std::size_t>(id)];
    out += std::to_string(id) + ". " + serialize_clause(c, sig, names);
    switch (c.provenance.kind) {
      case InferenceKind::input:
        out += "  [input]";
        break;
      case InferenceKind::resolution:
        out += "  [resolution " + std::to_string(c.provenance.parent1) + "," +
               std::to_string(c.provenance.parent2) + "]";
        break;
      case InferenceKind::factoring:
        out += "  [factoring " + std::to_string(c.provenance.parent1) + "]";
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace prover
