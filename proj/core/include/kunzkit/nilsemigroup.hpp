#pragma once

#include <optional>
#include <vector>

#include "kunzkit/semigroup.hpp"

namespace kunzkit {

/// A finite, partly cancellative, commutative nilsemigroup with identity 0,
/// m non-nil elements labeled 0..m-1, and an absorbing nil (label m).
/// When built from a numerical semigroup, the labels are residue classes
/// mod m and the atoms are the residues of the non-multiplicity generators.
class KunzNilsemigroup {
public:
  Int size() const { return m_; }              // number of non-nil elements
  Int nil() const { return m_; }               // the absorbing label
  bool is_nil(Int p) const { return p == m_; }

  /// Table lookup; nil is absorbing.
  Int add(Int p, Int q) const {
    return table_[static_cast<std::size_t>(p * (m_ + 1) + q)];
  }

  /// Atom residues, ascending.  Every exponent vector in this module uses
  /// this coordinate order.
  const std::vector<Int>& atoms() const { return atoms_; }

  Int embedding_dimension() const { return static_cast<Int>(atoms_.size()) + 1; }
  Int codimension() const { return m_ - embedding_dimension(); }

  /// The semigroup this table came from, when there is one.
  const std::optional<NumericalSemigroup>& origin() const { return origin_; }

  /// Value of an exponent vector over the atoms (nil() once any partial sum
  /// dies).
  Int evaluate(const Factorization& z) const;

  /// Row-major table over (0..m-1, nil), used for dedup fingerprints.
  const std::vector<Int>& flattened_table() const { return table_; }

  bool operator==(const KunzNilsemigroup& other) const {
    return m_ == other.m_ && table_ == other.table_ && atoms_ == other.atoms_;
  }

private:
  KunzNilsemigroup(Int m, std::vector<Int> table, std::vector<Int> atoms,
                   std::optional<NumericalSemigroup> origin)
      : m_(m), table_(std::move(table)), atoms_(std::move(atoms)), origin_(std::move(origin)) {}

  Int m_ = 0;
  std::vector<Int> table_; // (m+1) x (m+1), row-major
  std::vector<Int> atoms_;
  std::optional<NumericalSemigroup> origin_;

  friend KunzNilsemigroup from_semigroup(const NumericalSemigroup&);
  friend KunzNilsemigroup validate_table(Int, const std::vector<std::vector<Int>>&,
                                         std::vector<Int>);
  friend class KunzVectorTableBuilder;
};

/// Kunz nilsemigroup of a numerical semigroup: i + j = (i+j) mod m when the
/// Apery elements add exactly, nil otherwise.
KunzNilsemigroup from_semigroup(const NumericalSemigroup& s);

/// Validates a raw (m+1) x (m+1) addition table (index m = nil) and returns
/// the nilsemigroup.  Checks identity, absorbing nil, commutativity,
/// associativity (exhaustive for m <= 64, seeded sampling above),
/// partial cancellativity, nilpotency of every nonzero element, and that the
/// declared atoms are exactly the minimal generators.  Errors name a witness.
KunzNilsemigroup validate_table(Int m, const std::vector<std::vector<Int>>& table,
                                std::vector<Int> atoms);

/// One Hasse-diagram edge of the divisibility poset: upper = atom + lower.
struct PosetCover {
  Int lower = 0;
  Int upper = 0;
  Int atom = 0; // atom label (a residue when the poset came from a semigroup)

  auto operator<=>(const PosetCover&) const = default;
};

/// Divisibility poset of the non-nil elements, with covers labeled by the
/// atom realizing them.  0 is the unique minimum.
struct KunzPoset {
  Int size = 0;
  std::vector<Int> atoms;
  std::vector<PosetCover> covers; // sorted by (lower, upper)
};

KunzPoset kunz_poset(const KunzNilsemigroup& n);

/// Rebuilds the full addition table from cover relations alone (the poset
/// determines the additive structure).  Used to cross-check kunz_poset.
KunzNilsemigroup addition_from_poset(const KunzPoset& poset);

/// Exact factorization set of a non-nil element over the atoms, ascending
/// lexicographic.  Nil is rejected; its factorization set is infinite (see
/// minimal_nil_factorizations).
std::vector<Factorization> element_factorizations(const KunzNilsemigroup& n, Int p);

/// The minimal elements of the factorization set of nil under the
/// componentwise order, ascending lexicographic.
std::vector<Factorization> minimal_nil_factorizations(const KunzNilsemigroup& n);

/// A connected set B of minimal nil factorizations such that removing any
/// supported coordinate i lands exactly on the factorization set of a single
/// non-nil element.
struct OuterBettiElement {
  std::vector<Factorization> factorizations; // sorted lex
  std::vector<Int> support;                  // union of member supports

  auto operator<=>(const OuterBettiElement&) const = default;
};

std::vector<OuterBettiElement> outer_betti_elements(const KunzNilsemigroup& n);

/// Trades of the nilsemigroup presentation; trades at nil are never emitted.
/// Trade::element holds the non-nil element label.
std::vector<Trade> nil_minimal_presentation(const KunzNilsemigroup& n);

/// eta(N) = (number of outer Betti elements) + (number of nil trades).
struct NilPresentationSummary {
  std::vector<Trade> trades;
  std::vector<Int> betti_classes;   // labels carrying trades, sorted
  Int outer_betti_count = 0;
  Int eta = 0;
};

NilPresentationSummary eta(const KunzNilsemigroup& n);

/// Lifts the nilsemigroup data to a minimal presentation of s, where n must
/// be the Kunz nilsemigroup of s.  One trade per outer Betti element (its
/// lex-smallest member against the first-coordinate bump of the lex-smallest
/// factorization of the element minus the multiplicity) plus every nil trade
/// with a prepended zero.  The result is checked against
/// minimal_presentation_direct before returning.
MinimalPresentation lift_presentation(const KunzNilsemigroup& n, const NumericalSemigroup& s);

/// True when p + q = nil for every nonzero q.
bool is_maximal(const KunzNilsemigroup& n, Int p);

/// Quotient by a maximal non-atom element: p is identified with nil and the
/// remaining labels are renumbered order-preservingly.  Factorization sets of
/// the surviving elements are unchanged; p's joins the nil factorizations.
KunzNilsemigroup quotient_by_maximal(const KunzNilsemigroup& n, Int p);

/// The quotient chain N = N_0, N_1, ..., N_r obtained by repeatedly removing
/// a divisibility-maximal non-atom (smallest label first).  The final entry
/// has only 0, nil, and the atoms, with choose2(e) outer Betti elements.
std::vector<KunzNilsemigroup> quotient_chain(const KunzNilsemigroup& n);

/// Verified bound predicates on (m, e, eta) data.
inline Int eta_lower_bound(Int e, Int r) { return choose2(e) - r; }
inline std::optional<Int> eta_upper_bound_small_codim(Int e, Int r) {
  if (r <= 2) return choose2(e);
  if (r == 3) return choose2(e) + 1;
  return std::nullopt;
}
/// A complete intersection (eta = e - 1) needs multiplicity at least 2^(e-1).
bool complete_intersection_bound_ok(Int m, Int e, Int eta_value);

bool satisfies_eta_lower_bound(const KunzNilsemigroup& n);
bool satisfies_eta_upper_bound_small_codim(const KunzNilsemigroup& n);

} // namespace kunzkit
