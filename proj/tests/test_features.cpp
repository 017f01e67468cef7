#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "prover/features.hpp"
#include "prover/fol.hpp"

using namespace prover;
using namespace prover::testing;

namespace {

Term var(VarId v) { return Term::variable(v); }

}  // namespace

TEST_CASE("clause feature examples") {
  TestSig ts;

  SUBCASE("~p(X) | q(f(X)) counts every block") {
    // One negated and one positive literal; applications f and a below; one
    // variable appearing twice.
    const Clause c = make_clause(
        {Literal{true, ts.p, {var(0)}},
         Literal{false, ts.q, {Term::application(ts.f, {var(0)})}}});
    const ClauseFeatures f = clause_features(c);
    CHECK(f.negated_literals == 1);
    CHECK(f.positive_literals == 1);
    CHECK(f.atomic_terms == 1);  // just the f application
    CHECK(f.distinct_predicates == 2);
    CHECK(f.distinct_functors == 1);
    CHECK(f.distinct_variables == 1);
    CHECK(f.total_variables == 2);
  }
  SUBCASE("nested applications count per node") {
    const Clause c = make_clause({Literal{true, ts.p, {var(0)}},
                                  Literal{false, ts.q,
                                          {Term::application(
                                              ts.f, {Term::application(
                                                        ts.f, {Term::application(ts.a)})})}}});
    const ClauseFeatures f = clause_features(c);
    CHECK(f.atomic_terms == 3);      // f, f, a
    CHECK(f.distinct_functors == 2);  // f and a
  }
  SUBCASE("the empty clause is all zeros") {
    const ClauseFeatures f = clause_features(make_clause({}));
    for (double x : f.as_array()) CHECK(x == 0.0);
  }
  SUBCASE("p(a) | p(b)") {
    const Clause c = make_clause({Literal{false, ts.p, {Term::application(ts.a)}},
                                  Literal{false, ts.p, {Term::application(ts.b)}}});
    const ClauseFeatures f = clause_features(c);
    CHECK(f.negated_literals == 0);
    CHECK(f.positive_literals == 2);
    CHECK(f.atomic_terms == 2);
    CHECK(f.distinct_predicates == 1);
    CHECK(f.distinct_functors == 2);
    CHECK(f.distinct_variables == 0);
    CHECK(f.total_variables == 0);
  }
}

TEST_CASE("clause features are invariant under renaming and literal order") {
  TestSig ts;
  Rng rng(651);
  for (int i = 0; i < 300; ++i) {
    const Clause c = random_clause(rng, ts, 4, 2, 3);
    std::unordered_set<VarId> reserved;
    collect_variables(c, reserved);
    Clause variant = rename_apart(c, reserved);
    rng.shuffle(variant.literals);
    CHECK(clause_features(c).as_array() == clause_features(variant).as_array());
  }
}

TEST_CASE("aggregate blocks are sum, average, max, min in feature order") {
  TestSig ts;
  // Two clauses with known features: p(a) -> (0,1,1,1,1,0,0) and
  // ~p(X)|~q(X) -> (2,0,0,2,0,1,2).
  const Clause c1 = make_clause({Literal{false, ts.p, {Term::application(ts.a)}}});
  const Clause c2 = make_clause({Literal{true, ts.p, {var(0)}}, Literal{true, ts.q, {var(0)}}});
  const auto agg = aggregate_features({c1, c2});

  const std::array<double, 7> sum{2, 1, 1, 3, 1, 1, 2};
  const std::array<double, 7> avg{1, 0.5, 0.5, 1.5, 0.5, 0.5, 1};
  const std::array<double, 7> mx{2, 1, 1, 2, 1, 1, 2};
  const std::array<double, 7> mn{0, 0, 0, 1, 0, 0, 0};
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(agg[i] == sum[i]);
    CHECK(agg[7 + i] == avg[i]);
    CHECK(agg[14 + i] == mx[i]);
    CHECK(agg[21 + i] == mn[i]);
  }
}

TEST_CASE("aggregates over a single clause collapse to that clause") {
  TestSig ts;
  Rng rng(652);
  for (int i = 0; i < 100; ++i) {
    const Clause c = random_clause(rng, ts, 3, 2, 2);
    const auto agg = aggregate_features({c});
    const auto f = clause_features(c).as_array();
    for (std::size_t k = 0; k < 7; ++k) {
      CHECK(agg[k] == f[k]);       // sum
      CHECK(agg[7 + k] == f[k]);   // avg
      CHECK(agg[14 + k] == f[k]);  // max
      CHECK(agg[21 + k] == f[k]);  // min
    }
  }
}

TEST_CASE("aggregate invariants on random initial sets") {
  TestSig ts;
  Rng rng(653);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Clause> initial;
    const std::size_t n = 1 + rng.next_index(6);
    for (std::size_t i = 0; i < n; ++i) initial.push_back(random_clause(rng, ts, 3, 2, 2));
    const auto agg = aggregate_features(initial);
    for (std::size_t k = 0; k < 7; ++k) {
      const double sum = agg[k], avg = agg[7 + k], mx = agg[14 + k], mn = agg[21 + k];
      CHECK(mn <= avg);
      CHECK(avg <= mx);
      CHECK(std::abs(sum - avg * static_cast<double>(n)) < 1e-9);
    }
  }
}

TEST_CASE("aggregating an empty initial set is an error") {
  CHECK_THROWS_AS(aggregate_features({}), std::invalid_argument);
}

TEST_CASE("assemble_features places every block at its documented offset") {
  ClauseFeatures cf;
  cf.negated_literals = 1;
  cf.positive_literals = 2;
  cf.atomic_terms = 3;
  cf.distinct_predicates = 4;
  cf.distinct_functors = 5;
  cf.distinct_variables = 6;
  cf.total_variables = 7;
  std::array<double, kAggregateFeatureCount> agg{};
  for (std::size_t i = 0; i < agg.size(); ++i) agg[i] = 100.0 + static_cast<double>(i);

  const FeatureVector v = assemble_features(cf, agg, 17, 2, 9);
  for (std::size_t i = 0; i < 7; ++i) CHECK(v[i] == static_cast<double>(i + 1));
  for (std::size_t i = 0; i < agg.size(); ++i) CHECK(v[7 + i] == agg[i]);
  CHECK(v[35] == 17.0);
  CHECK(v[36] == 2.0);
  CHECK(v[37] == 9.0);
}

TEST_CASE("problem_features composes the pieces and stays finite") {
  TestSig ts;
  Rng rng(654);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Clause> initial;
    const std::size_t n = 1 + rng.next_index(5);
    for (std::size_t i = 0; i < n; ++i) initial.push_back(random_clause(rng, ts, 3, 2, 2));

    Clause c = random_clause(rng, ts, 4, 2, 3);
    c.birth_step = static_cast<std::int32_t>(rng.next_index(50));
    c.provenance.kind = InferenceKind::resolution;

    const FeatureVector v = problem_features(c, initial);
    const FeatureVector expected = assemble_features(
        clause_features(c), aggregate_features(initial), c.birth_step, 2, initial.size());
    CHECK(v == expected);
    for (double x : v) CHECK(std::isfinite(x));
  }
}
