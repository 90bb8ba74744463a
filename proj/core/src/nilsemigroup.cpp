#include "kunzkit/nilsemigroup.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

namespace kunzkit {

namespace {

std::string triple(Int a, Int b, Int c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

Factorization minus_unit(const Factorization& z, std::size_t i) {
  Factorization out = z;
  --out.exponents[i];
  return out;
}

// Minimal generators derived from the table: nonzero non-nil elements that
// are not the sum of two nonzero non-nil elements.
std::vector<Int> derive_atoms(Int m, const std::vector<Int>& table) {
  std::vector<char> expressible(static_cast<std::size_t>(m), 0);
  for (Int a = 1; a < m; ++a)
    for (Int b = a; b < m; ++b) {
      Int t = table[static_cast<std::size_t>(a * (m + 1) + b)];
      if (t != m) expressible[static_cast<std::size_t>(t)] = 1;
    }
  std::vector<Int> atoms;
  for (Int p = 1; p < m; ++p)
    if (!expressible[static_cast<std::size_t>(p)]) atoms.push_back(p);
  return atoms;
}

} // namespace

Int KunzNilsemigroup::evaluate(const Factorization& z) const {
  Int v = 0;
  for (std::size_t i = 0; i < z.exponents.size(); ++i)
    for (Int c = 0; c < z.exponents[i]; ++c) {
      v = add(v, atoms_[i]);
      if (is_nil(v)) return v;
    }
  return v;
}

KunzNilsemigroup from_semigroup(const NumericalSemigroup& s) {
  const Int m = s.multiplicity();
  const auto ap = apery_set(s);
  std::vector<Int> table(static_cast<std::size_t>((m + 1) * (m + 1)), m);
  for (Int i = 0; i < m; ++i)
    for (Int j = 0; j < m; ++j) {
      const Int t = (i + j) % m;
      if (ap[i] + ap[j] == ap[t]) table[static_cast<std::size_t>(i * (m + 1) + j)] = t;
    }
  std::vector<Int> atoms;
  for (std::size_t k = 1; k < s.generators().size(); ++k)
    atoms.push_back(s.generators()[k] % m);
  std::sort(atoms.begin(), atoms.end());
  if (std::adjacent_find(atoms.begin(), atoms.end()) != atoms.end())
    throw invariant_error("two generators share a residue class");
  if (derive_atoms(m, table) != atoms)
    throw invariant_error("table atoms disagree with generator residues");
  return KunzNilsemigroup(m, std::move(table), std::move(atoms), s);
}

KunzNilsemigroup validate_table(Int m, const std::vector<std::vector<Int>>& table,
                                std::vector<Int> atoms) {
  if (m < 1) throw validation_error("m must be at least 1");
  const std::size_t n = static_cast<std::size_t>(m) + 1;
  if (table.size() != n)
    throw validation_error("table must be (m+1) x (m+1) with index m as nil");
  std::vector<Int> flat;
  flat.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n)
      throw validation_error("table must be (m+1) x (m+1) with index m as nil");
    for (Int v : row) {
      if (v < 0 || v > m)
        throw validation_error("table entry out of range: " + std::to_string(v));
      flat.push_back(v);
    }
  }
  auto at = [&](Int a, Int b) { return flat[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)]; };

  for (Int p = 0; p <= m; ++p) {
    if (at(0, p) != p || at(p, 0) != p)
      throw validation_error("no identity: 0 + " + std::to_string(p) + " != " + std::to_string(p));
    if (at(m, p) != m || at(p, m) != m)
      throw validation_error("nil not absorbing at " + std::to_string(p));
  }
  for (Int a = 0; a <= m; ++a)
    for (Int b = a; b <= m; ++b)
      if (at(a, b) != at(b, a))
        throw validation_error("not commutative at (" + std::to_string(a) + ", " +
                               std::to_string(b) + ")");
  if (m <= 64) {
    for (Int a = 0; a < m; ++a)
      for (Int b = 0; b < m; ++b)
        for (Int c = 0; c < m; ++c)
          if (at(at(a, b), c) != at(a, at(b, c)))
            throw validation_error("not associative at " + triple(a, b, c));
  } else {
    std::mt19937_64 rng(0x6b756e7au); // fixed seed: deterministic sampling
    std::uniform_int_distribution<Int> pick(0, m - 1);
    for (int k = 0; k < 200000; ++k) {
      Int a = pick(rng), b = pick(rng), c = pick(rng);
      if (at(at(a, b), c) != at(a, at(b, c)))
        throw validation_error("not associative at " + triple(a, b, c));
    }
  }
  for (Int a = 1; a < m; ++a)
    for (Int b = 0; b < m; ++b)
      for (Int c = b + 1; c < m; ++c)
        if (at(a, b) == at(a, c) && at(a, b) != m)
          throw validation_error("not partly cancellative: witness " + triple(a, b, c));
  // every nonzero element must have a nil power, else factorization sets
  // of non-nil elements are not finite
  for (Int p = 1; p < m; ++p) {
    Int v = p;
    Int steps = 0;
    while (v != m && steps <= m) {
      v = at(v, p);
      ++steps;
    }
    if (v != m)
      throw validation_error("not nilpotent: no multiple of " + std::to_string(p) + " is nil");
  }
  std::sort(atoms.begin(), atoms.end());
  if (derive_atoms(m, flat) != atoms)
    throw validation_error("declared atoms do not match the table's minimal generators");
  return KunzNilsemigroup(m, std::move(flat), std::move(atoms), std::nullopt);
}

KunzPoset kunz_poset(const KunzNilsemigroup& n) {
  KunzPoset poset;
  poset.size = n.size();
  poset.atoms = n.atoms();
  for (Int b = 0; b < n.size(); ++b)
    for (Int a : n.atoms()) {
      const Int c = n.add(b, a);
      if (!n.is_nil(c)) poset.covers.push_back(PosetCover{b, c, a});
    }
  std::sort(poset.covers.begin(), poset.covers.end());
  return poset;
}

KunzNilsemigroup addition_from_poset(const KunzPoset& poset) {
  const Int m = poset.size;
  // step[(p, atom index)] -> covering element, if any
  std::map<std::pair<Int, Int>, Int> step;
  for (const auto& c : poset.covers) {
    auto key = std::make_pair(c.lower, c.atom);
    auto [it, inserted] = step.emplace(key, c.upper);
    if (!inserted && it->second != c.upper)
      throw validation_error("poset has two covers from one element with the same atom");
  }
  // one factorization per element, by walking covers up from 0
  std::vector<std::vector<Int>> fact(static_cast<std::size_t>(m));
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  const std::size_t k = poset.atoms.size();
  fact[0].assign(k, 0);
  seen[0] = 1;
  std::vector<Int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Int b = queue[head];
    for (std::size_t ai = 0; ai < k; ++ai) {
      auto it = step.find({b, poset.atoms[ai]});
      if (it == step.end()) continue;
      const Int c = it->second;
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        fact[static_cast<std::size_t>(c)] = fact[static_cast<std::size_t>(b)];
        ++fact[static_cast<std::size_t>(c)][ai];
        queue.push_back(c);
      }
    }
  }
  for (Int p = 0; p < m; ++p)
    if (!seen[static_cast<std::size_t>(p)])
      throw validation_error("poset element " + std::to_string(p) + " unreachable from 0");
  // p + q = apply q's factorization to p, one atom at a time
  auto apply = [&](Int p, Int q) {
    Int v = p;
    for (std::size_t ai = 0; ai < k; ++ai)
      for (Int c = 0; c < fact[static_cast<std::size_t>(q)][ai]; ++c) {
        auto it = step.find({v, poset.atoms[ai]});
        if (it == step.end()) return m;
        v = it->second;
      }
    return v;
  };
  std::vector<std::vector<Int>> table(static_cast<std::size_t>(m) + 1,
                                      std::vector<Int>(static_cast<std::size_t>(m) + 1, m));
  for (Int p = 0; p < m; ++p)
    for (Int q = 0; q < m; ++q) table[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = apply(p, q);
  return validate_table(m, table, poset.atoms);
}

std::vector<Factorization> element_factorizations(const KunzNilsemigroup& n, Int p) {
  if (p < 0 || p > n.size())
    throw validation_error("element out of range: " + std::to_string(p));
  if (n.is_nil(p))
    throw validation_error("factorizations of nil are infinite; use minimal_nil_factorizations");
  const std::size_t k = n.atoms().size();
  std::vector<Factorization> out;
  std::vector<Int> current(k, 0);
  // exponent of atom i ranges until the partial sum dies; strictly new values
  // along the way, so this terminates within m steps per coordinate
  auto rec = [&](auto&& self, std::size_t i, Int value) -> void {
    if (i == k) {
      if (value == p) out.push_back(Factorization{current});
      return;
    }
    Int v = value;
    for (Int z = 0; !n.is_nil(v); ++z) {
      current[i] = z;
      self(self, i + 1, v);
      v = n.add(v, n.atoms()[i]);
    }
    current[i] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

namespace {

// Union of all non-nil factorization sets; downward closed.
std::set<Factorization> divisor_closed_set(const KunzNilsemigroup& n) {
  std::set<Factorization> d;
  for (Int p = 0; p < n.size(); ++p)
    for (auto& z : element_factorizations(n, p)) d.insert(std::move(z));
  return d;
}

} // namespace

std::vector<Factorization> minimal_nil_factorizations(const KunzNilsemigroup& n) {
  const auto d = divisor_closed_set(n);
  const std::size_t k = n.atoms().size();
  std::set<Factorization> candidates;
  for (const auto& z : d)
    for (std::size_t i = 0; i < k; ++i) {
      Factorization up = z;
      ++up.exponents[i];
      if (!d.count(up)) candidates.insert(std::move(up));
    }
  std::vector<Factorization> out;
  for (const auto& z : candidates) {
    bool minimal = true;
    for (std::size_t i = 0; i < k && minimal; ++i)
      if (z.exponents[i] > 0 && !d.count(minus_unit(z, i))) minimal = false;
    if (minimal) out.push_back(z);
  }
  return out; // std::set iteration is already lexicographic
}

std::vector<OuterBettiElement> outer_betti_elements(const KunzNilsemigroup& n) {
  const auto mins = minimal_nil_factorizations(n);
  const std::size_t count = mins.size();
  const std::size_t k = n.atoms().size();

  // z and z' are adjacent when z - e_i and z' - e_i factor the same non-nil
  // element; bucket by (coordinate, parent) so each bucket is a clique
  std::map<std::pair<std::size_t, Int>, std::vector<std::size_t>> buckets;
  for (std::size_t v = 0; v < count; ++v)
    for (std::size_t i = 0; i < k; ++i)
      if (mins[v].exponents[i] > 0) {
        const Int parent = n.evaluate(minus_unit(mins[v], i));
        if (n.is_nil(parent))
          throw invariant_error("minimal nil factorization with a nil divisor");
        buckets[{i, parent}].push_back(v);
      }
  std::vector<std::size_t> parent(count);
  for (std::size_t v = 0; v < count; ++v) parent[v] = v;
  auto find = [&](std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  for (const auto& [key, members] : buckets)
    for (std::size_t j = 1; j < members.size(); ++j)
      parent[find(members[j])] = find(members[0]);

  std::map<std::size_t, std::vector<Factorization>> comps;
  for (std::size_t v = 0; v < count; ++v) comps[find(v)].push_back(mins[v]);

  std::vector<OuterBettiElement> out;
  for (auto& [root, members] : comps) {
    std::sort(members.begin(), members.end());
    std::vector<Int> support;
    for (std::size_t i = 0; i < k; ++i)
      if (std::any_of(members.begin(), members.end(),
                      [&](const Factorization& z) { return z.exponents[i] > 0; }))
        support.push_back(static_cast<Int>(i));
    // condition: for every supported i, B - e_i is the full factorization
    // set of a single non-nil element
    bool keep = true;
    for (Int i : support) {
      std::vector<Factorization> shifted;
      Int common = -1;
      for (const auto& z : members) {
        if (z.exponents[static_cast<std::size_t>(i)] == 0) continue;
        Factorization w = minus_unit(z, static_cast<std::size_t>(i));
        const Int p = n.evaluate(w);
        if (common == -1) common = p;
        if (p != common) {
          keep = false;
          break;
        }
        shifted.push_back(std::move(w));
      }
      if (!keep) break;
      std::sort(shifted.begin(), shifted.end());
      if (shifted != element_factorizations(n, common)) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(OuterBettiElement{std::move(members), std::move(support)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::vector<Factorization>> lex_components(std::vector<Factorization> verts) {
  // same clique-per-coordinate trick as the semigroup side
  std::sort(verts.begin(), verts.end());
  const std::size_t count = verts.size();
  std::vector<std::size_t> parent(count);
  for (std::size_t v = 0; v < count; ++v) parent[v] = v;
  auto find = [&](std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  const std::size_t k = count == 0 ? 0 : verts[0].exponents.size();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t first = count;
    for (std::size_t v = 0; v < count; ++v)
      if (verts[v].exponents[c] > 0) {
        if (first == count)
          first = v;
        else
          parent[find(v)] = find(first);
      }
  }
  std::vector<std::vector<Factorization>> comps;
  std::vector<std::size_t> root_to_comp(count, count);
  for (std::size_t v = 0; v < count; ++v) {
    std::size_t r = find(v);
    if (root_to_comp[r] == count) {
      root_to_comp[r] = comps.size();
      comps.emplace_back();
    }
    comps[root_to_comp[r]].push_back(verts[v]);
  }
  return comps;
}

} // namespace

std::vector<Trade> nil_minimal_presentation(const KunzNilsemigroup& n) {
  std::vector<Trade> trades;
  for (Int p = 1; p < n.size(); ++p) {
    auto facts = element_factorizations(n, p);
    if (facts.size() < 2) continue;
    auto comps = lex_components(std::move(facts));
    for (std::size_t j = 1; j < comps.size(); ++j)
      trades.push_back(Trade{comps[j].front(), comps[0].front(), p});
  }
  return trades;
}

NilPresentationSummary eta(const KunzNilsemigroup& n) {
  NilPresentationSummary summary;
  summary.trades = nil_minimal_presentation(n);
  for (const auto& t : summary.trades)
    if (summary.betti_classes.empty() || summary.betti_classes.back() != t.element)
      summary.betti_classes.push_back(t.element);
  summary.outer_betti_count = static_cast<Int>(outer_betti_elements(n).size());
  summary.eta = summary.outer_betti_count + static_cast<Int>(summary.trades.size());
  return summary;
}

MinimalPresentation lift_presentation(const KunzNilsemigroup& n, const NumericalSemigroup& s) {
  const KunzNilsemigroup expected = from_semigroup(s);
  if (!(n == expected))
    throw validation_error("nilsemigroup is not the Kunz nilsemigroup of the given semigroup");

  const Int m = s.multiplicity();
  const auto ap = apery_set(s);
  const auto& gens = s.generators();
  // atom coordinate -> generator coordinate (atom order is by residue, which
  // need not match generator order)
  std::vector<std::size_t> gen_index(n.atoms().size());
  for (std::size_t i = 0; i < n.atoms().size(); ++i) {
    const Int residue = n.atoms()[i];
    for (std::size_t g = 1; g < gens.size(); ++g)
      if (gens[g] % m == residue) gen_index[i] = g;
  }
  auto embed = [&](const Factorization& z) {
    Factorization out;
    out.exponents.assign(gens.size(), 0);
    for (std::size_t i = 0; i < z.exponents.size(); ++i)
      out.exponents[gen_index[i]] = z.exponents[i];
    return out;
  };
  auto evaluate = [&](const Factorization& z) {
    Int v = 0;
    for (std::size_t i = 0; i < z.exponents.size(); ++i)
      v = checked_add(v, checked_mul(z.exponents[i], gens[i]));
    return v;
  };

  MinimalPresentation pres;
  for (const auto& b : outer_betti_elements(n)) {
    const Factorization z = embed(b.factorizations.front());
    const Int element = evaluate(z);
    // element is not in Ap(S), so element - m is a member
    if (!ap.contains(element - m))
      throw invariant_error("lifted outer Betti element lands inside the Apery set");
    auto w = factorizations(s, element - m);
    Factorization z_prime = w.front(); // lex-smallest
    ++z_prime.exponents[0];
    pres.trades.push_back(Trade{z, std::move(z_prime), element});
  }
  for (const auto& t : nil_minimal_presentation(n)) {
    pres.trades.push_back(Trade{embed(t.left), embed(t.right), ap[t.element]});
  }
  std::sort(pres.trades.begin(), pres.trades.end(),
            [](const Trade& a, const Trade& b) {
              return std::tie(a.element, a.left, a.right) < std::tie(b.element, b.left, b.right);
            });
  for (const auto& t : pres.trades)
    if (pres.betti_elements.empty() || pres.betti_elements.back() != t.element)
      pres.betti_elements.push_back(t.element);

  const MinimalPresentation direct = minimal_presentation_direct(s);
  if (pres.eta() != direct.eta())
    throw invariant_error("lifted presentation cardinality disagrees with the direct scan");
  if (pres.betti_elements != direct.betti_elements)
    throw invariant_error("lifted Betti elements disagree with the direct scan");
  return pres;
}

bool is_maximal(const KunzNilsemigroup& n, Int p) {
  if (p <= 0 || p >= n.size()) return false;
  for (Int q = 1; q < n.size(); ++q)
    if (!n.is_nil(n.add(p, q))) return false;
  return true;
}

KunzNilsemigroup quotient_by_maximal(const KunzNilsemigroup& n, Int p) {
  if (p <= 0 || p >= n.size())
    throw validation_error("cannot quotient by " + std::to_string(p));
  if (std::binary_search(n.atoms().begin(), n.atoms().end(), p))
    throw validation_error("cannot quotient by an atom");
  if (!is_maximal(n, p))
    throw validation_error(std::to_string(p) + " is not maximal");

  const Int m = n.size();
  const Int m2 = m - 1;
  auto relabel = [&](Int q) { return q > p ? q - 1 : q; };
  std::vector<std::vector<Int>> table(static_cast<std::size_t>(m2) + 1,
                                      std::vector<Int>(static_cast<std::size_t>(m2) + 1, m2));
  for (Int i = 0; i < m; ++i) {
    if (i == p) continue;
    for (Int j = 0; j < m; ++j) {
      if (j == p) continue;
      Int t = n.add(i, j);
      table[static_cast<std::size_t>(relabel(i))][static_cast<std::size_t>(relabel(j))] =
          (t == p || n.is_nil(t)) ? m2 : relabel(t);
    }
  }
  std::vector<Int> atoms;
  for (Int a : n.atoms()) atoms.push_back(relabel(a));
  KunzNilsemigroup quotient = validate_table(m2, table, std::move(atoms));

  // factorization sets of surviving elements are untouched; p's set joins nil
  for (Int q = 0; q < m; ++q) {
    if (q == p) continue;
    if (element_factorizations(quotient, relabel(q)) != element_factorizations(n, q))
      throw invariant_error("quotient changed a surviving factorization set");
  }
  return quotient;
}

std::vector<KunzNilsemigroup> quotient_chain(const KunzNilsemigroup& n) {
  std::vector<KunzNilsemigroup> chain{n};
  while (true) {
    const KunzNilsemigroup& cur = chain.back();
    // non-atoms maximal w.r.t. divisibility; anything strictly above a
    // non-atom is a non-atom, so these are maximal in the quotient sense
    std::vector<Int> non_atoms;
    for (Int q = 1; q < cur.size(); ++q)
      if (!std::binary_search(cur.atoms().begin(), cur.atoms().end(), q)) non_atoms.push_back(q);
    if (non_atoms.empty()) break;
    Int pick = -1;
    for (Int q : non_atoms) {
      if (is_maximal(cur, q)) {
        pick = q;
        break;
      }
    }
    if (pick < 0) throw invariant_error("no divisibility-maximal non-atom found");
    chain.push_back(quotient_by_maximal(cur, pick));
  }
  const auto& last = chain.back();
  if (static_cast<Int>(chain.size()) - 1 != n.codimension())
    throw invariant_error("quotient chain length disagrees with the codimension");
  if (static_cast<Int>(outer_betti_elements(last).size()) != choose2(last.embedding_dimension()))
    throw invariant_error("atom-only nilsemigroup has the wrong outer Betti count");
  return chain;
}

bool complete_intersection_bound_ok(Int m, Int e, Int eta_value) {
  if (eta_value != e - 1) return true;
  return m >= (Int{1} << (e - 1));
}

bool satisfies_eta_lower_bound(const KunzNilsemigroup& n) {
  return eta(n).eta >= eta_lower_bound(n.embedding_dimension(), n.codimension());
}

bool satisfies_eta_upper_bound_small_codim(const KunzNilsemigroup& n) {
  const auto bound = eta_upper_bound_small_codim(n.embedding_dimension(), n.codimension());
  return !bound || eta(n).eta <= *bound;
}

} // namespace kunzkit
