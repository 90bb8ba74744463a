#pragma once

#include <map>
#include <string>

#include "kunzkit/semigroup.hpp"

namespace kunzkit {

/// Parametric family constructors.  Every constructor checks its hypotheses
/// strictly (validation_error), asserts that the raw generator list it writes
/// down is already minimal, and verifies the promised (m, e, eta) triple
/// through the nilsemigroup route -- plus the direct presentation scan when
/// m <= 14 (invariant_error on any mismatch).

/// Smallest prime strictly greater than n, by trial division.
Int next_prime_above(Int n);

/// <m, m+1, ..., 2m-1>: eta = C(m, 2).
NumericalSemigroup max_embdim_family(Int m);

/// Apery-of-unique-expression family with eta = C(e, 2) at any m >= e >= 3:
/// <m, m+1> plus the generators (r+1)m + j for j in [r+2, m-1], r = m - e.
NumericalSemigroup rosales_family(Int m, Int e);

/// Embedding dimension e, multiplicity m = e + r, eta = C(e, 2) - s for
/// 0 <= s <= min(e-2, r).  The extreme case s = e-2 is a gluing of the
/// max-embedding-dimension semigroup on e-1 with a multiple of m; smaller s
/// comes from an explicit generator list.
NumericalSemigroup interval_family(Int e, Int r, Int s);

/// Embedding dimension e >= 5, r >= 3, eta = C(e, 2) + 1.
NumericalSemigroup extra_betti_family(Int e, Int r);

/// Multiplicity m >= 8, embedding dimension 4, eta = 3, via the gluing
/// m*Z + a*<4,5,6> with a the smallest prime above m.  No such semigroup
/// exists at m = 7.
NumericalSemigroup eta3_family(Int m);

/// Embedding dimension 4 with any eta >= 6 and 4m >= (eta-2)^2; even and odd
/// eta use different generator lists.
NumericalSemigroup embdim4_family(Int m, Int eta_target);

/// Gluing m*Z + (m+1)*S' raising both e and eta by one, keeping the new
/// multiplicity m.  Requires m >= m(S') + frobenius(S'); the gluing itself
/// re-validates membership, so a borderline m may still be rejected.
NumericalSemigroup extend_eta(const NumericalSemigroup& s_prime, Int m);

/// <7, 15, 17, 33>: codimension 3 with eta = C(4,2) + 1 = 7 and two outer
/// Betti elements of identical support.
NumericalSemigroup fixture_extra_betti_e4();

/// Name + parameters + the (m, e, eta) triple the construction promises.
struct FamilySpec {
  std::string name; // max_embdim | rosales | interval | extra_betti | eta3 | embdim4 | extend
  std::map<std::string, Int> parameters;
  Int expected_m = 0;
  Int expected_e = 0;
  Int expected_eta = 0;
};

/// Dispatches on spec.name and fills in the verified triple.
/// "extend" takes parameters m plus g0, g1, ... for the base generators.
NumericalSemigroup build_family(FamilySpec& spec);

} // namespace kunzkit
