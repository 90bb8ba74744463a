#include "kunzkit/survey.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <unordered_map>

namespace kunzkit {

// Trusted construction path for tables coming from valid Kunz vectors; the
// survey builds millions of these, so it skips validate_table.
class KunzVectorTableBuilder {
public:
  static KunzNilsemigroup build(Int m, std::vector<Int> table, std::vector<Int> atoms) {
    return KunzNilsemigroup(m, std::move(table), std::move(atoms), std::nullopt);
  }
};

bool satisfies_kunz_conditions(const KunzVector& v) {
  const Int m = v.m;
  if (m < 2 || static_cast<Int>(v.x.size()) != m - 1) return false;
  for (Int i = 1; i < m; ++i)
    if (v.x[static_cast<std::size_t>(i - 1)] < 1) return false;
  for (Int i = 1; i < m; ++i)
    for (Int j = i; j < m; ++j) {
      const Int t = (i + j) % m;
      if (t == 0) continue;
      const Int lhs = v.x[static_cast<std::size_t>(i - 1)] + v.x[static_cast<std::size_t>(j - 1)] +
                      (i + j > m ? 1 : 0);
      if (lhs < v.x[static_cast<std::size_t>(t - 1)]) return false;
    }
  return true;
}

namespace {

// Conditions become checkable once their largest index is assigned.  For
// level k (1-based): pairs (i, k-i) with target k, and wrapped pairs (i, k)
// with target i + k - m.
struct LevelChecks {
  std::vector<std::pair<Int, Int>> sum_pairs;  // x_a + x_b >= x_k
  std::vector<std::pair<Int, Int>> wrap_pairs; // x_a + x_k + 1 >= x_t, as (a, t)
};

std::vector<LevelChecks> build_level_checks(Int m) {
  std::vector<LevelChecks> levels(static_cast<std::size_t>(m));
  for (Int k = 1; k < m; ++k) {
    auto& lc = levels[static_cast<std::size_t>(k)];
    for (Int i = 1; i <= k - i; ++i) lc.sum_pairs.emplace_back(i, k - i);
    for (Int i = std::max<Int>(1, m + 1 - k); i <= k; ++i) {
      const Int t = i + k - m;
      if (t >= 1) lc.wrap_pairs.emplace_back(i, t);
    }
  }
  return levels;
}

bool dfs_kunz(Int m, Int bound, const std::vector<LevelChecks>& levels, std::vector<Int>& x,
              Int k, const std::function<void(const KunzVector&)>& emit,
              const std::atomic<bool>* cancel) {
  if (k == m) {
    emit(KunzVector{m, x});
    return true;
  }
  if (cancel && cancel->load(std::memory_order_relaxed)) return false;
  const auto& lc = levels[static_cast<std::size_t>(k)];
  for (Int v = 1; v <= bound; ++v) {
    x[static_cast<std::size_t>(k - 1)] = v;
    bool ok = true;
    for (const auto& [a, b] : lc.sum_pairs)
      if (x[static_cast<std::size_t>(a - 1)] + x[static_cast<std::size_t>(b - 1)] < v) {
        ok = false;
        break;
      }
    if (ok)
      for (const auto& [a, t] : lc.wrap_pairs)
        if (x[static_cast<std::size_t>(a - 1)] + v + 1 < x[static_cast<std::size_t>(t - 1)]) {
          ok = false;
          break;
        }
    if (ok && !dfs_kunz(m, bound, levels, x, k + 1, emit, cancel)) return false;
  }
  return true;
}

} // namespace

bool enumerate_kunz_vectors(Int m, Int bound, const std::function<void(const KunzVector&)>& emit,
                            const std::atomic<bool>* cancel) {
  if (m < 2) throw validation_error("enumeration requires m >= 2");
  if (bound < 1) throw validation_error("enumeration requires bound >= 1");
  const auto levels = build_level_checks(m);
  std::vector<Int> x(static_cast<std::size_t>(m - 1), 0);
  return dfs_kunz(m, bound, levels, x, 1, emit, cancel);
}

std::vector<KunzVector> enumerate_kunz_vectors(Int m, Int bound) {
  std::vector<KunzVector> out;
  enumerate_kunz_vectors(m, bound, [&](const KunzVector& v) { out.push_back(v); });
  return out;
}

namespace {

std::vector<Int> apery_of_kunz(const KunzVector& v) {
  std::vector<Int> ap(static_cast<std::size_t>(v.m), 0);
  for (Int i = 1; i < v.m; ++i)
    ap[static_cast<std::size_t>(i)] =
        checked_add(checked_mul(v.m, v.x[static_cast<std::size_t>(i - 1)]), i);
  return ap;
}

std::vector<Int> table_of_apery(Int m, const std::vector<Int>& ap) {
  std::vector<Int> table(static_cast<std::size_t>((m + 1) * (m + 1)), m);
  for (Int i = 0; i < m; ++i)
    for (Int j = 0; j < m; ++j) {
      const Int t = (i + j) % m;
      if (ap[static_cast<std::size_t>(i)] + ap[static_cast<std::size_t>(j)] ==
          ap[static_cast<std::size_t>(t)])
        table[static_cast<std::size_t>(i * (m + 1) + j)] = t;
    }
  return table;
}

std::vector<Int> atoms_of_table(Int m, const std::vector<Int>& table) {
  std::vector<char> expressible(static_cast<std::size_t>(m), 0);
  for (Int a = 1; a < m; ++a)
    for (Int b = a; b < m; ++b) {
      const Int t = table[static_cast<std::size_t>(a * (m + 1) + b)];
      if (t != m) expressible[static_cast<std::size_t>(t)] = 1;
    }
  std::vector<Int> atoms;
  for (Int p = 1; p < m; ++p)
    if (!expressible[static_cast<std::size_t>(p)]) atoms.push_back(p);
  return atoms;
}

struct Fingerprint {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  bool operator==(const Fingerprint&) const = default;
};
struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const { return f.lo ^ (f.hi * 0x9e3779b97f4a7c15ULL); }
};

Fingerprint fingerprint_table(const std::vector<Int>& table) {
  // two independent FNV-1a streams; collisions are resolved by full-table
  // comparison, never trusted blindly
  std::uint64_t a = 0xcbf29ce484222325ULL, b = 0x84222325cbf29ce4ULL;
  for (Int v : table) {
    a = (a ^ static_cast<std::uint64_t>(v)) * 0x100000001b3ULL;
    b = (b ^ static_cast<std::uint64_t>(v + 0x51ULL)) * 0x100000001b3ULL;
    b ^= b >> 29;
  }
  return Fingerprint{a, b};
}

struct DistinctNil {
  std::vector<Int> table;
  std::vector<Int> atoms;
  KunzVector first_vector;
};

// Ordered dedup store: records keep first-encounter order, which is the
// lexicographic order of their first defining vector.
struct DedupStore {
  std::vector<DistinctNil> records;
  std::unordered_map<Fingerprint, std::vector<std::size_t>, FingerprintHash> index;

  void insert(Fingerprint fp, std::vector<Int> table, std::vector<Int> atoms,
              const KunzVector& v) {
    auto& bucket = index[fp];
    for (std::size_t idx : bucket)
      if (records[idx].table == table) return;
    bucket.push_back(records.size());
    records.push_back(DistinctNil{std::move(table), std::move(atoms), v});
  }
};

Int thread_count(Int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KUNZKIT_THREADS")) {
    const Int n = std::atoll(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<Int>(hw);
}

// Enumerate + dedup one multiplicity, sharded over x_1.
DedupStore collect_distinct(Int m, Int bound, Int threads, const std::atomic<bool>* cancel) {
  const Int shards = bound;
  std::vector<DedupStore> local(static_cast<std::size_t>(shards));
  std::atomic<Int> next{0};
  auto worker = [&]() {
    for (;;) {
      const Int shard = next.fetch_add(1);
      if (shard >= shards) return;
      if (cancel && cancel->load(std::memory_order_relaxed)) return;
      auto& store = local[static_cast<std::size_t>(shard)];
      // no Kunz condition involves x_1 alone, so presetting the shard prefix
      // needs no check of its own
      const auto levels = build_level_checks(m);
      std::vector<Int> x(static_cast<std::size_t>(m - 1), 0);
      x[0] = shard + 1;
      dfs_kunz(m, bound, levels, x, 2, [&](const KunzVector& v) {
        auto ap = apery_of_kunz(v);
        auto table = table_of_apery(m, ap);
        const auto fp = fingerprint_table(table);
        auto atoms = atoms_of_table(m, table);
        store.insert(fp, std::move(table), std::move(atoms), v);
      }, cancel);
    }
  };
  const Int t = std::min<Int>(thread_count(threads), shards);
  std::vector<std::thread> pool;
  for (Int i = 1; i < t; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  DedupStore merged;
  for (auto& store : local)
    for (auto& rec : store.records) {
      const auto fp = fingerprint_table(rec.table);
      merged.insert(fp, std::move(rec.table), std::move(rec.atoms), rec.first_vector);
    }
  return merged;
}

struct CellKey {
  Int e;
  Int eta;
  auto operator<=>(const CellKey&) const = default;
};

std::map<CellKey, std::pair<KunzVector, Int>> achieved_cells(Int m, Int bound, Int threads,
                                                             const std::atomic<bool>* cancel) {
  DedupStore store = collect_distinct(m, bound, threads, cancel);
  const std::size_t count = store.records.size();
  std::vector<Int> etas(count, 0);
  std::vector<Int> es(count, 0);
  {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        auto& rec = store.records[i];
        KunzNilsemigroup n = KunzVectorTableBuilder::build(m, rec.table, rec.atoms);
        es[i] = n.embedding_dimension();
        etas[i] = eta(n).eta;
      }
    };
    const Int t = std::min<Int>(thread_count(threads), static_cast<Int>(count) + 1);
    std::vector<std::thread> pool;
    for (Int i = 1; i < t; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  std::map<CellKey, std::pair<KunzVector, Int>> cells;
  for (std::size_t i = 0; i < count; ++i) {
    auto [it, inserted] =
        cells.emplace(CellKey{es[i], etas[i]}, std::make_pair(store.records[i].first_vector, 1));
    if (!inserted) ++it->second.second;
  }
  return cells;
}

} // namespace

std::vector<DistinctNilsemigroup> distinct_nilsemigroups(Int m, Int bound, Int threads,
                                                         const std::atomic<bool>* cancel) {
  if (m < 2) throw validation_error("enumeration requires m >= 2");
  if (bound < 1) throw validation_error("enumeration requires bound >= 1");
  DedupStore store = collect_distinct(m, bound, threads, cancel);
  std::vector<DistinctNilsemigroup> out;
  out.reserve(store.records.size());
  for (auto& rec : store.records)
    out.push_back(DistinctNilsemigroup{
        KunzVectorTableBuilder::build(m, std::move(rec.table), std::move(rec.atoms)),
        std::move(rec.first_vector)});
  return out;
}

KunzNilsemigroup nilsemigroup_from_kunz(const KunzVector& v) {
  if (!satisfies_kunz_conditions(v)) throw validation_error("invalid Kunz vector");
  const auto ap = apery_of_kunz(v);
  auto table = table_of_apery(v.m, ap);
  auto atoms = atoms_of_table(v.m, table);
  return KunzVectorTableBuilder::build(v.m, std::move(table), std::move(atoms));
}

NumericalSemigroup semigroup_from_kunz(const KunzVector& v) {
  KunzNilsemigroup n = nilsemigroup_from_kunz(v);
  const auto ap = apery_of_kunz(v);
  std::vector<Int> gens{v.m};
  for (Int a : n.atoms()) gens.push_back(ap[static_cast<std::size_t>(a)]);
  std::sort(gens.begin(), gens.end());
  return NumericalSemigroup(std::move(gens));
}

std::set<Int> EtaProfile::achieved(Int m, Int e) const {
  std::set<Int> out;
  for (const auto& row : rows)
    if (row.m == m && row.e == e) out.insert(row.eta);
  return out;
}

std::set<std::pair<Int, Int>> EtaProfile::achieved_pairs(Int m) const {
  std::set<std::pair<Int, Int>> out;
  for (const auto& row : rows)
    if (row.m == m) out.emplace(row.e, row.eta);
  return out;
}

EtaProfile survey(const std::vector<Int>& multiplicities, const SurveyOptions& options) {
  std::vector<Int> ms = multiplicities;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  EtaProfile profile;
  for (Int m : ms) {
    if (m < 2) throw validation_error("survey requires m >= 2");
    const Int bound = options.bound > 0 ? options.bound : std::max<Int>(m, 8);
    if (options.cancel && options.cancel->load(std::memory_order_relaxed)) {
      profile.truncated = true;
      break;
    }
    auto cells = achieved_cells(m, bound, options.threads, options.cancel);
    if (options.cancel && options.cancel->load(std::memory_order_relaxed)) {
      profile.truncated = true;
      break;
    }
    std::optional<bool> stabilized;
    if (options.check_stabilization) {
      auto doubled = achieved_cells(m, 2 * bound, options.threads, options.cancel);
      if (options.cancel && options.cancel->load(std::memory_order_relaxed)) {
        profile.truncated = true;
        break; // a partial doubled run must not stamp the rows
      }
      auto strip = [&](const auto& map) {
        std::set<std::pair<Int, Int>> keys;
        for (const auto& [key, value] : map)
          if (!options.e_filter || key.e == *options.e_filter) keys.emplace(key.e, key.eta);
        return keys;
      };
      stabilized = strip(cells) == strip(doubled);
    }
    for (const auto& [key, value] : cells) {
      if (options.e_filter && key.e != *options.e_filter) continue;
      if (options.max_eta && key.eta > *options.max_eta) continue;
      ProfileRow row;
      row.m = m;
      row.e = key.e;
      row.eta = key.eta;
      row.witness_generators = semigroup_from_kunz(value.first).generators();
      row.nilsemigroup_count = value.second;
      row.bound = bound;
      row.stabilized = stabilized;
      profile.rows.push_back(std::move(row));
    }
  }
  return profile;
}

bool stabilization_check(Int m, Int bound, std::optional<Int> e_filter) {
  auto strip = [&](Int b) {
    auto cells = achieved_cells(m, b, 0, nullptr);
    std::set<std::pair<Int, Int>> keys;
    for (const auto& [key, value] : cells)
      if (!e_filter || key.e == *e_filter) keys.emplace(key.e, key.eta);
    return keys;
  };
  return strip(bound) == strip(2 * bound);
}

BoundsReport verify_bounds(const EtaProfile& profile) {
  BoundsReport report;
  for (const auto& row : profile.rows) {
    ++report.rows_checked;
    const Int r = row.m - row.e;
    if (row.eta < eta_lower_bound(row.e, r))
      report.violations.push_back({row, "eta >= C(e,2) - r"});
    if (const auto upper = eta_upper_bound_small_codim(row.e, r); upper && row.eta > *upper)
      report.violations.push_back(
          {row, r <= 2 ? "r <= 2 implies eta <= C(e,2)" : "r = 3 implies eta <= C(e,2) + 1"});
    if (!complete_intersection_bound_ok(row.m, row.e, row.eta))
      report.violations.push_back({row, "eta = e - 1 implies m >= 2^(e-1)"});
  }
  return report;
}

} // namespace kunzkit
