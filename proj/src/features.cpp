/**
 * @file features.cpp
 */
#include "prover/features.hpp"

#include <stdexcept>
#include <unordered_set>

namespace prover {

namespace {

void count_term(const Term& t, int& atomic_terms, int& total_vars,
                std::unordered_set<VarId>& vars, std::unordered_set<SymbolId>& functors) {
  if (t.is_variable) {
    ++total_vars;
    vars.insert(t.var_id());
    return;
  }
  ++atomic_terms;
  functors.insert(t.functor());
  for (const auto& a : t.args) count_term(a, atomic_terms, total_vars, vars, functors);
}

}  // namespace

ClauseFeatures clause_features(const Clause& c) {
  int negated = 0, positive = 0, atomic_terms = 0, total_vars = 0;
  std::unordered_set<SymbolId> predicates;
  std::unordered_set<SymbolId> functors;
  std::unordered_set<VarId> vars;
  for (const auto& lit : c.literals) {
    (lit.negated ? negated : positive)++;
    predicates.insert(lit.predicate);
    for (const auto& t : lit.args) count_term(t, atomic_terms, total_vars, vars, functors);
  }
  ClauseFeatures f;
  f.negated_literals = negated;
  f.positive_literals = positive;
  f.atomic_terms = atomic_terms;
  f.distinct_predicates = static_cast<double>(predicates.size());
  f.distinct_functors = static_cast<double>(functors.size());
  f.distinct_variables = static_cast<double>(vars.size());
  f.total_variables = total_vars;
  return f;
}

std::array<double, kAggregateFeatureCount> aggregate_features(const std::vector<Clause>& initial) {
  if (initial.empty()) {
    throw std::invalid_argument("aggregate_features: initial clause set is empty");
  }
  std::array<double, kClauseFeatureCount> sum{}, max{}, min{};
  bool first = true;
  for (const auto& c : initial) {
    const auto f = clause_features(c).as_array();
    for (std::size_t i = 0; i < kClauseFeatureCount; ++i) {
      sum[i] += f[i];
      if (first || f[i] > max[i]) max[i] = f[i];
      if (first || f[i] < min[i]) min[i] = f[i];
    }
    first = false;
  }
  std::array<double, kAggregateFeatureCount> out{};
  const double n = static_cast<double>(initial.size());
  for (std::size_t i = 0; i < kClauseFeatureCount; ++i) {
    out[i] = sum[i];
    out[kClauseFeatureCount + i] = sum[i] / n;
    out[2 * kClauseFeatureCount + i] = max[i];
    out[3 * kClauseFeatureCount + i] = min[i];
  }
  return out;
}

FeatureVector assemble_features(const ClauseFeatures& clause,
                                const std::array<double, kAggregateFeatureCount>& aggregates,
                                std::int32_t birth_step, int premise_count,
                                std::size_t initial_count) {
  FeatureVector out{};
  const auto cf = clause.as_array();
  for (std::size_t i = 0; i < kClauseFeatureCount; ++i) out[i] = cf[i];
  for (std::size_t i = 0; i < kAggregateFeatureCount; ++i) out[kClauseFeatureCount + i] = aggregates[i];
  out[35] = static_cast<double>(birth_step);
  out[36] = static_cast<double>(premise_count);
  out[37] = static_cast<double>(initial_count);
  return out;
}

FeatureVector problem_features(const Clause& c, const std::vector<Clause>& initial) {
  return assemble_features(clause_features(c), aggregate_features(initial), c.birth_step,
                           c.provenance.premise_count(), initial.size());
}

}  // namespace prover
