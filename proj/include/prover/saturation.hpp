/**
 * @file saturation.hpp
 * The given-clause saturation loop: two priority queues (age and cost) over
 * the unprocessed set, age:cost alternation, forward-then-backward
 * order-subsumption against the processed set, factor/resolution generation
 * with tautology elimination, and proof reconstruction over the clause
 * provenance DAG. The cost function is pluggable.
 */
#ifndef PROVER_SATURATION_HPP
#define PROVER_SATURATION_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "prover/fol.hpp"

namespace prover {

/// Passed to cost functions; carries the initial clause set and the
/// saturation step at which the evaluated clause was generated.
struct ProblemContext {
  const std::vector<Clause>* initial = nullptr;
  int step = 0;
};

/// Clause evaluator, lower is better. prepare() runs once per saturation run
/// before any cost query; stateful implementations cache per-problem data
/// there. Evaluations must be deterministic and total.
class CostFunction {
 public:
  virtual ~CostFunction() = default;
  virtual void prepare(const std::vector<Clause>& /*initial*/) {}
  virtual double cost(const Clause& c, const ProblemContext& ctx) const = 0;
};

/// The default heuristic: clause weight, ignoring context.
class ClauseWeightCost final : public CostFunction {
 public:
  double cost(const Clause& c, const ProblemContext&) const override {
    return static_cast<double>(clause_weight(c));
  }
};

/// Alternation schedule between the fairness (age) queue and the heuristic
/// (cost) queue: a consecutive age picks, then c consecutive cost picks.
struct AgeCostRatio {
  int age = 1;
  int cost = 5;
};

/// Run limits. max_generated is a literal cap (0 allows no generation at
/// all; use a huge value for effectively unlimited). Zero max_steps or
/// max_seconds disables that limit; wall-clock is off by default so runs
/// stay reproducible (enable it for interactive proving).
struct Budget {
  std::int64_t max_generated = 50000;
  int max_steps = 0;
  double max_seconds = 0.0;
};

enum class SaturationStatus : std::uint8_t { refutation_found, saturated, budget_exhausted };

struct SaturationStats {
  std::int64_t generated_count = 0;  // clauses generated during search (inputs excluded)
  int processed_count = 0;           // clauses added to the processed set
  int discarded_count = 0;           // selections dropped by forward subsumption
  int steps = 0;                     // selection events
  double elapsed_seconds = 0.0;
};

struct SaturationResult {
  SaturationStatus status = SaturationStatus::saturated;
  ClauseId empty_clause_id = -1;
  std::vector<ClauseId> proof_clauses;  // sorted; empty unless refutation_found
  SaturationStats stats;
  /// Append-only log of every clause seen, ids 0..n-1 in creation order;
  /// the first entries are the initial clauses. Parents precede children.
  std::vector<Clause> all_generated;

  std::size_t initial_count = 0;
};

struct SaturationOptions {
  /// Re-validate queue coherence every iteration (test hook; slow).
  bool check_invariants = false;
};

SaturationResult saturate(const std::vector<Clause>& initial, CostFunction& cost_fn,
                          AgeCostRatio ratio = {}, const Budget& budget = {},
                          const SaturationOptions& options = {});

/// Transitive provenance closure from the refuting empty clause. Throws
/// std::logic_error unless result.status is refutation_found.
std::vector<ClauseId> proof_ancestors(const SaturationResult& result);

/// Negates a universally quantified conjecture clause L1 | ... | Lk into k
/// unit clauses ~Li with every variable replaced by a fresh Skolem constant
/// interned into the signature. Throws std::invalid_argument on the empty
/// clause.
std::vector<Clause> negate_conjecture(const Clause& conjecture, Signature& signature);

/// One proof clause per line, in TPTP syntax with provenance annotations.
std::string proof_trace(const SaturationResult& result, const Signature& sig,
                        const VarNames* names = nullptr);

}  // namespace prover

#endif  // PROVER_SATURATION_HPP
