/**
 * @file proposer.hpp
 * The forward proposer: random linear-resolution walks over an axiom set.
 * Each walk step applies one inference chosen uniformly among the available
 * instances; after the first step every inference must involve the previous
 * step's result. The final clause becomes the conjecture of a synthetic
 * theorem that is valid by construction.
 */
#ifndef PROVER_PROPOSER_HPP
#define PROVER_PROPOSER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "prover/fol.hpp"
#include "prover/tptp.hpp"

namespace prover {

class ProposerError : public std::runtime_error {
 public:
  enum class Kind { degenerate_axioms, dead_end };

  ProposerError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind(kind) {}

  Kind kind;
};

struct ProposerConfig {
  int max_restarts = 20;           // walk restarts before giving up with dead_end
  int max_conjecture_weight = 60;  // candidates heavier than this are excluded
  /// Reject candidates order-subsumed by an axiom. Keeps trivially-true
  /// conjectures out of the training data; switchable off.
  bool filter_subsumed_by_axiom = true;
  /// When false, the non-linear parent of each step must be an axiom; when
  /// true it may also be any earlier walk clause.
  bool linear_parents_all = true;
};

struct WalkEntry {
  InferenceKind kind = InferenceKind::resolution;
  ClauseId parent1 = -1;  // axioms are 0..n-1, walk results n, n+1, ...
  ClauseId parent2 = -1;
  Clause result;
};

struct SyntheticTheorem {
  std::vector<Clause> axioms;  // ids 0..n-1
  Clause conjecture;           // the last walk result
  std::vector<WalkEntry> walk;
  std::uint64_t seed = 0;
  int steps = 0;
};

/// Runs a walk of exactly `steps` inferences. Throws ProposerError with kind
/// degenerate_axioms when no inference exists among the axioms at all, and
/// with kind dead_end when every restart ran out of candidates.
SyntheticTheorem propose_theorem(const std::vector<Clause>& axioms, int steps,
                                 std::uint64_t seed, const ProposerConfig& cfg = {});

/// Problem with the theorem's axioms plus the Skolemized negation of its
/// conjecture; unsatisfiable by construction. The signature is extended with
/// the Skolem constants.
Problem make_problem(const SyntheticTheorem& t, const Signature& signature,
                     const VarNames& var_names, const std::string& name);

/// Independent validity certificate: re-derives every walk entry from its
/// recorded parents (the result must be a variant of some actual
/// resolvent/factor), checks linearity, then replays the conjecture against
/// its Skolemized negation units down to the empty clause.
bool certify_by_replay(const SyntheticTheorem& t, const Signature& signature);

}  // namespace prover

#endif  // PROVER_PROPOSER_HPP
