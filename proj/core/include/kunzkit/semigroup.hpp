#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "kunzkit/checked.hpp"
#include "kunzkit/errors.hpp"

namespace kunzkit {

/// An exponent vector expressing an element as a nonnegative combination of
/// generators (one coordinate per generator, in generator order).
struct Factorization {
  std::vector<Int> exponents;

  auto operator<=>(const Factorization&) const = default;

  /// Indices of the positive coordinates.
  std::vector<Int> support() const;
  /// Coordinate sum.
  Int length() const;
};

/// A pair of distinct factorizations of the same element.
struct Trade {
  Factorization left;
  Factorization right;
  Int element = 0;

  auto operator<=>(const Trade&) const = default;
};

/// A minimal presentation: trades sorted by (element, left, right), with the
/// Betti elements they occur at.  eta() is the presentation cardinality.
struct MinimalPresentation {
  std::vector<Trade> trades;
  std::vector<Int> betti_elements; // sorted, distinct

  Int eta() const { return static_cast<Int>(trades.size()); }
};

/// The m smallest semigroup elements, one per residue class mod m
/// (elements()[i] is the least element congruent to i).
class AperySet {
public:
  AperySet(Int multiplicity, std::vector<Int> elements);

  Int multiplicity() const { return m_; }
  const std::vector<Int>& elements() const { return elements_; }
  Int operator[](Int residue) const { return elements_[static_cast<std::size_t>(residue)]; }
  Int max() const;

  /// Membership test: n belongs to the semigroup iff n >= a_{n mod m}.
  bool contains(Int n) const {
    return n >= 0 && n >= elements_[static_cast<std::size_t>(n % m_)];
  }

private:
  Int m_;
  std::vector<Int> elements_;
};

/// A cofinite additive submonoid of the nonnegative integers, held by its
/// unique minimal generating set (ascending).  The constructor validates
/// minimality and cofiniteness; use canonicalize() to reduce arbitrary input.
class NumericalSemigroup {
public:
  explicit NumericalSemigroup(std::vector<Int> minimal_generators);

  const std::vector<Int>& generators() const { return gens_; }
  Int multiplicity() const { return gens_.front(); }
  Int embedding_dimension() const { return static_cast<Int>(gens_.size()); }
  Int codimension() const { return multiplicity() - embedding_dimension(); }

  bool operator==(const NumericalSemigroup& other) const { return gens_ == other.gens_; }

private:
  std::vector<Int> gens_;
};

/// Minimal generating set of the semigroup generated by the input.
/// Throws validation_error on empty input, non-positive entries, or gcd != 1.
NumericalSemigroup canonicalize(std::vector<Int> raw_generators);

/// Membership via the Apery set.
bool contains(const NumericalSemigroup& s, Int n);

/// Shortest-path computation of the Apery set over the residue classes:
/// arcs i -> (i + g) mod m of weight g for each non-multiplicity generator.
AperySet apery_set(const NumericalSemigroup& s);

/// Largest gap, max(Ap) - m.  Throws validation_error when there are no gaps
/// (the semigroup is all of the nonnegative integers).
Int frobenius(const NumericalSemigroup& s);

/// The complete set of factorizations of n, in ascending lexicographic
/// order; empty iff n is not a member.
std::vector<Factorization> factorizations(const NumericalSemigroup& s, Int n);

/// The factorization graph of a member n: vertices are the factorizations,
/// two are adjacent when their supports intersect.  Components are sorted
/// lexicographically, each component itself sorted.
struct FactorizationGraph {
  std::vector<Factorization> vertices;
  std::vector<std::vector<Factorization>> components;

  /// n is a Betti element iff the graph is disconnected.
  bool is_betti() const { return components.size() >= 2; }
};
FactorizationGraph factorization_graph(const NumericalSemigroup& s, Int n);

/// Minimal presentation by direct scan over the candidate elements
/// n <= max(Ap) + max(generators).  For every element with a disconnected
/// factorization graph, emits one trade per extra component, pairing the
/// lexicographically smallest factorization of each later component with
/// that of the first.  This is the reference oracle the nilsemigroup route
/// is checked against.
MinimalPresentation minimal_presentation_direct(const NumericalSemigroup& s);

/// The gluing a'*S + a*S' of two semigroups by coprime non-atom elements
/// a of S and a' of S'.  Postconditions verified on every call: embedding
/// dimensions add, the glued multiplicity is min(a'*m(S), a*m(S')), and the
/// presentation cardinality is eta(S) + eta(S') + 1.
NumericalSemigroup glue(const NumericalSemigroup& s, const NumericalSemigroup& s_prime,
                        Int a, Int a_prime);

} // namespace kunzkit
