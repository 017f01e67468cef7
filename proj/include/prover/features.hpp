/**
 * @file features.hpp
 * The flat clause representation for the learned scorer: seven scalar
 * features per clause, four aggregations of those features over the initial
 * clause set, and three run scalars, concatenated into a 38-element vector:
 *
 *   [clause 7 | sum 7 | avg 7 | max 7 | min 7 | birth_step, premise_count,
 *    initial_count]
 */
#ifndef PROVER_FEATURES_HPP
#define PROVER_FEATURES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "prover/fol.hpp"

namespace prover {

inline constexpr std::size_t kClauseFeatureCount = 7;
inline constexpr std::size_t kAggregateFeatureCount = 28;
inline constexpr std::size_t kFeatureCount = 38;

/// Identifies the feature layout; stored in model files so a scorer is never
/// applied to vectors with a different meaning.
inline constexpr const char* kFeatureSchema =
    "clause7|sum7|avg7|max7|min7|birth_step,premise_count,initial_count";

using FeatureVector = std::array<double, kFeatureCount>;

/// Counts follow the clause-weight node conventions: atomic terms are
/// functor-application nodes (constants included); variables count per
/// occurrence for the total and per identifier for the distinct count.
struct ClauseFeatures {
  double negated_literals = 0;
  double positive_literals = 0;
  double atomic_terms = 0;
  double distinct_predicates = 0;
  double distinct_functors = 0;
  double distinct_variables = 0;
  double total_variables = 0;

  std::array<double, kClauseFeatureCount> as_array() const {
    return {negated_literals, positive_literals,  atomic_terms,    distinct_predicates,
            distinct_functors, distinct_variables, total_variables};
  }
};

ClauseFeatures clause_features(const Clause& c);

/// Sum, average, maximum and minimum of the seven clause features over the
/// initial clauses, in that block order. Throws std::invalid_argument when
/// `initial` is empty.
std::array<double, kAggregateFeatureCount> aggregate_features(const std::vector<Clause>& initial);

/// Assembles the full 38-vector from precomputed pieces; the fast path used
/// inside cost functions, where the aggregate block is cached per problem.
FeatureVector assemble_features(const ClauseFeatures& clause,
                                const std::array<double, kAggregateFeatureCount>& aggregates,
                                std::int32_t birth_step, int premise_count,
                                std::size_t initial_count);

/// Full feature vector for a candidate clause against the problem's initial
/// clauses; birth step and premise count come from the clause itself.
FeatureVector problem_features(const Clause& c, const std::vector<Clause>& initial);

/// One clause-level training example mined from a proof attempt.
struct TrainingExample {
  FeatureVector features{};
  int label = 0;  // 1 = appeared in the proof
  std::string theorem_id;
  ClauseId clause_id = -1;
};

}  // namespace prover

#endif  // PROVER_FEATURES_HPP
