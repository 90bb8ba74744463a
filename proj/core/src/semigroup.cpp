#include "kunzkit/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace kunzkit {

namespace {

// Membership table for the semigroup generated by gens, up to limit inclusive.
std::vector<char> member_table(const std::vector<Int>& gens, Int limit) {
  std::vector<char> dp(static_cast<std::size_t>(limit) + 1, 0);
  dp[0] = 1;
  for (Int n = 1; n <= limit; ++n) {
    for (Int g : gens) {
      if (g <= n && dp[static_cast<std::size_t>(n - g)]) {
        dp[static_cast<std::size_t>(n)] = 1;
        break;
      }
    }
  }
  return dp;
}

// g is an atom iff it is not a sum of two nonzero members.
bool is_atom_in(const std::vector<char>& dp, Int g) {
  for (Int s = 1; s < g; ++s)
    if (dp[static_cast<std::size_t>(s)] && dp[static_cast<std::size_t>(g - s)]) return false;
  return true;
}

void validate_positive(const std::vector<Int>& gens) {
  if (gens.empty()) throw validation_error("generator list is empty");
  for (Int g : gens)
    if (g <= 0) throw validation_error("generators must be positive, got " + std::to_string(g));
}

} // namespace

std::vector<Int> Factorization::support() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] > 0) out.push_back(static_cast<Int>(i));
  return out;
}

Int Factorization::length() const {
  return std::accumulate(exponents.begin(), exponents.end(), Int{0});
}

AperySet::AperySet(Int multiplicity, std::vector<Int> elements)
    : m_(multiplicity), elements_(std::move(elements)) {
  if (m_ < 1 || static_cast<Int>(elements_.size()) != m_)
    throw validation_error("Apery set must have exactly m elements");
  if (elements_[0] != 0) throw validation_error("Apery set must contain 0 at residue 0");
  for (Int i = 0; i < m_; ++i)
    if (elements_[static_cast<std::size_t>(i)] % m_ != i)
      throw validation_error("Apery element at residue " + std::to_string(i) +
                             " is in the wrong class");
}

Int AperySet::max() const { return *std::max_element(elements_.begin(), elements_.end()); }

NumericalSemigroup::NumericalSemigroup(std::vector<Int> minimal_generators)
    : gens_(std::move(minimal_generators)) {
  validate_positive(gens_);
  if (!std::is_sorted(gens_.begin(), gens_.end()) ||
      std::adjacent_find(gens_.begin(), gens_.end()) != gens_.end())
    throw validation_error("generators must be strictly increasing");
  Int g = 0;
  for (Int x : gens_) g = std::gcd(g, x);
  if (g != 1) throw validation_error("not cofinite: generators have gcd " + std::to_string(g));
  auto dp = member_table(gens_, gens_.back());
  for (Int x : gens_)
    if (!is_atom_in(dp, x))
      throw validation_error("generating set is not minimal: " + std::to_string(x) +
                             " is redundant");
}

NumericalSemigroup canonicalize(std::vector<Int> raw_generators) {
  validate_positive(raw_generators);
  std::sort(raw_generators.begin(), raw_generators.end());
  raw_generators.erase(std::unique(raw_generators.begin(), raw_generators.end()),
                       raw_generators.end());
  Int g = 0;
  for (Int x : raw_generators) g = std::gcd(g, x);
  if (g != 1) throw validation_error("not cofinite: generators have gcd " + std::to_string(g));
  auto dp = member_table(raw_generators, raw_generators.back());
  std::vector<Int> atoms;
  for (Int x : raw_generators)
    if (is_atom_in(dp, x)) atoms.push_back(x);
  return NumericalSemigroup(std::move(atoms));
}

AperySet apery_set(const NumericalSemigroup& s) {
  const Int m = s.multiplicity();
  std::vector<Int> dist(static_cast<std::size_t>(m), -1);
  dist[0] = 0;
  using Entry = std::pair<Int, Int>; // (distance, residue)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(0, 0);
  while (!heap.empty()) {
    auto [d, r] = heap.top();
    heap.pop();
    if (d != dist[static_cast<std::size_t>(r)]) continue;
    for (std::size_t k = 1; k < s.generators().size(); ++k) {
      const Int g = s.generators()[k];
      const Int r2 = (r + g) % m;
      const Int d2 = checked_add(d, g);
      if (dist[static_cast<std::size_t>(r2)] < 0 || d2 < dist[static_cast<std::size_t>(r2)]) {
        dist[static_cast<std::size_t>(r2)] = d2;
        heap.emplace(d2, r2);
      }
    }
  }
  // cofiniteness guarantees every class is reached
  for (Int i = 0; i < m; ++i)
    if (dist[static_cast<std::size_t>(i)] < 0)
      throw invariant_error("Apery class " + std::to_string(i) + " unreachable");
  return AperySet(m, std::move(dist));
}

bool contains(const NumericalSemigroup& s, Int n) { return apery_set(s).contains(n); }

Int frobenius(const NumericalSemigroup& s) {
  if (s.multiplicity() == 1)
    throw validation_error("no gaps: the semigroup is all nonnegative integers");
  return apery_set(s).max() - s.multiplicity();
}

std::vector<Factorization> factorizations(const NumericalSemigroup& s, Int n) {
  std::vector<Factorization> out;
  if (n < 0) return out;
  const auto& gens = s.generators();
  const std::size_t k = gens.size();
  std::vector<Int> current(k, 0);
  // lexicographic DFS over exponents; coordinate i ranges over 0..rem/gens[i]
  auto rec = [&](auto&& self, std::size_t i, Int rem) -> void {
    if (i == k - 1) {
      if (rem % gens[i] == 0) {
        current[i] = rem / gens[i];
        out.push_back(Factorization{current});
        current[i] = 0;
      }
      return;
    }
    for (Int z = 0; z * gens[i] <= rem; ++z) {
      current[i] = z;
      self(self, i + 1, rem - z * gens[i]);
    }
    current[i] = 0;
  };
  rec(rec, 0, n);
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Components of the support-intersection graph.  Vertices sharing a positive
// coordinate form a clique, so linking per coordinate suffices.
std::vector<std::vector<Factorization>> support_components(std::vector<Factorization> verts) {
  std::sort(verts.begin(), verts.end());
  const std::size_t n = verts.size();
  DisjointSets ds(n);
  const std::size_t k = n == 0 ? 0 : verts[0].exponents.size();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t first = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (verts[v].exponents[c] > 0) {
        if (first == n)
          first = v;
        else
          ds.unite(first, v);
      }
    }
  }
  std::vector<std::vector<Factorization>> comps;
  std::vector<std::size_t> root_to_comp(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = ds.find(v);
    if (root_to_comp[r] == n) {
      root_to_comp[r] = comps.size();
      comps.emplace_back();
    }
    comps[root_to_comp[r]].push_back(verts[v]);
  }
  // vertices were lex-sorted, so each component is sorted and components are
  // already ordered by their lex-smallest member
  return comps;
}

} // namespace

FactorizationGraph factorization_graph(const NumericalSemigroup& s, Int n) {
  auto verts = factorizations(s, n);
  if (verts.empty()) throw validation_error(std::to_string(n) + " is not a member");
  FactorizationGraph g;
  g.components = support_components(verts);
  g.vertices = std::move(verts);
  return g;
}

MinimalPresentation minimal_presentation_direct(const NumericalSemigroup& s) {
  const auto ap = apery_set(s);
  const Int bound = ap.max() + s.generators().back();
  MinimalPresentation pres;
  for (Int n = 1; n <= bound; ++n) {
    if (!ap.contains(n)) continue;
    auto comps = support_components(factorizations(s, n));
    if (comps.size() < 2) continue;
    pres.betti_elements.push_back(n);
    for (std::size_t j = 1; j < comps.size(); ++j)
      pres.trades.push_back(Trade{comps[j].front(), comps[0].front(), n});
  }
  return pres;
}

NumericalSemigroup glue(const NumericalSemigroup& s, const NumericalSemigroup& s_prime,
                        Int a, Int a_prime) {
  auto check_multiplier = [](const NumericalSemigroup& sg, Int x, const char* label) {
    if (x <= 0 || !contains(sg, x))
      throw validation_error(std::string("invalid gluing: ") + label + " is not a member");
    if (std::binary_search(sg.generators().begin(), sg.generators().end(), x))
      throw validation_error(std::string("invalid gluing: ") + label + " is an atom");
  };
  check_multiplier(s, a, "a");
  check_multiplier(s_prime, a_prime, "a'");
  if (std::gcd(a, a_prime) != 1)
    throw validation_error("invalid gluing: gcd(a, a') != 1");

  std::vector<Int> raw;
  for (Int g : s.generators()) raw.push_back(checked_mul(a_prime, g));
  for (Int g : s_prime.generators()) raw.push_back(checked_mul(a, g));
  NumericalSemigroup glued = canonicalize(std::move(raw));

  if (glued.embedding_dimension() != s.embedding_dimension() + s_prime.embedding_dimension())
    throw invariant_error("gluing postcondition failed: embedding dimensions do not add");
  const Int expected_m = std::min(checked_mul(a_prime, s.multiplicity()),
                                  checked_mul(a, s_prime.multiplicity()));
  if (glued.multiplicity() != expected_m)
    throw invariant_error("gluing postcondition failed: multiplicity != min(a'm, am')");
  const Int eta_sum = minimal_presentation_direct(s).eta() +
                      minimal_presentation_direct(s_prime).eta() + 1;
  if (minimal_presentation_direct(glued).eta() != eta_sum)
    throw invariant_error("gluing postcondition failed: eta is not additive plus one");
  return glued;
}

} // namespace kunzkit
