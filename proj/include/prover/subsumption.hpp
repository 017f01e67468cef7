/**
 * @file subsumption.hpp
 * Redundancy elimination predicates: theta-subsumption via backtracking
 * literal matching, and the order-subsumption refinement that additionally
 * requires the subsumer to have no more literals than the subsumee.
 *
 * Inclusion is injective multiset inclusion: each literal of the subsumer is
 * matched to a distinct literal of the subsumee under one consistent
 * substitution. Variant equality (mutual renaming) is provided on the side.
 */
#ifndef PROVER_SUBSUMPTION_HPP
#define PROVER_SUBSUMPTION_HPP

#include "prover/fol.hpp"

namespace prover {

/// True iff there is a substitution theta with c1*theta included in c2,
/// mapping distinct literals of c1 to distinct literals of c2. c2's variables
/// are never bound (one-way matching); clauses need not be renamed apart by
/// the caller.
bool theta_subsumes(const Clause& c1, const Clause& c2);

/// num_literals(c1) <= num_literals(c2) and theta_subsumes(c1, c2).
bool order_subsumes(const Clause& c1, const Clause& c2);

/// True iff c1 and c2 are alphabetic variants: equal up to a bijective
/// variable renaming, literal order ignored.
bool variant_equal(const Clause& c1, const Clause& c2);

}  // namespace prover

#endif  // PROVER_SUBSUMPTION_HPP
