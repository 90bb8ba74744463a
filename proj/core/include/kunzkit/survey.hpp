#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "kunzkit/nilsemigroup.hpp"

namespace kunzkit {

/// Coordinates x_i = (a_i - i) / m of an Apery set, all >= 1, subject to the
/// superadditivity conditions
///   x_i + x_j     >= x_{(i+j) mod m}  when i + j < m,
///   x_i + x_j + 1 >= x_{(i+j) mod m}  when i + j > m,
/// and no condition when i + j is divisible by m.
struct KunzVector {
  Int m = 0;
  std::vector<Int> x; // x_1 .. x_{m-1}

  auto operator<=>(const KunzVector&) const = default;
};

bool satisfies_kunz_conditions(const KunzVector& v);

/// All vectors in [1, bound]^{m-1} satisfying the conditions, emitted in
/// ascending lexicographic order.  DFS with prefix pruning: a partial
/// assignment dies as soon as a fully determined condition fails.  (A
/// condition whose largest index is still unassigned cannot fail inside the
/// box, since x_target <= bound <= x_i + bound.)  Returns false when stopped
/// early by the cancel flag.
bool enumerate_kunz_vectors(Int m, Int bound, const std::function<void(const KunzVector&)>& emit,
                            const std::atomic<bool>* cancel = nullptr);
std::vector<KunzVector> enumerate_kunz_vectors(Int m, Int bound);

/// Nilsemigroup of the semigroup behind a Kunz vector, built directly from
/// the Apery values a_i = m x_i + i.
KunzNilsemigroup nilsemigroup_from_kunz(const KunzVector& v);

/// Recovers the canonical semigroup: generators are m plus the Apery values
/// at the nilsemigroup atoms.
NumericalSemigroup semigroup_from_kunz(const KunzVector& v);

/// One representative per distinct addition table among all bounded Kunz
/// vectors, paired with the lexicographically first vector producing it.
/// Order follows the first vectors, so the result is deterministic.
struct DistinctNilsemigroup {
  KunzNilsemigroup nilsemigroup;
  KunzVector first_vector;
};
std::vector<DistinctNilsemigroup> distinct_nilsemigroups(Int m, Int bound, Int threads = 0,
                                                         const std::atomic<bool>* cancel = nullptr);

/// One achieved value: (m, e, eta) with a witness, the number of distinct
/// Kunz nilsemigroups attaining it, and the enumeration stamp.
struct ProfileRow {
  Int m = 0;
  Int e = 0;
  Int eta = 0;
  std::vector<Int> witness_generators;
  Int nilsemigroup_count = 0;
  Int bound = 0;
  std::optional<bool> stabilized;

  bool operator==(const ProfileRow&) const = default;
};

/// Survey result, rows sorted by (m, e, eta).
struct EtaProfile {
  std::vector<ProfileRow> rows;
  bool truncated = false;

  std::set<Int> achieved(Int m, Int e) const;
  std::set<std::pair<Int, Int>> achieved_pairs(Int m) const; // (e, eta)

  bool operator==(const EtaProfile&) const = default;
};

struct SurveyOptions {
  Int bound = 0;                 // 0: default max(m, 8) per multiplicity
  std::optional<Int> e_filter;   // keep only this embedding dimension
  std::optional<Int> max_eta;    // drop rows above this eta
  Int threads = 0;               // 0: KUNZKIT_THREADS env, else hardware
  bool check_stabilization = false; // also enumerate at 2*bound, stamp rows
  const std::atomic<bool>* cancel = nullptr;
};

/// Enumerate, deduplicate by addition-table fingerprint, compute eta once per
/// distinct nilsemigroup, and aggregate achieved values per (m, e).  Sharded
/// over the x_1 prefix; the merged output does not depend on thread count.
EtaProfile survey(const std::vector<Int>& multiplicities, const SurveyOptions& options = {});

/// True iff the achieved (e, eta) set at the given bound matches the one at
/// twice the bound; gates every bounded-enumeration nonexistence claim.
bool stabilization_check(Int m, Int bound, std::optional<Int> e_filter = std::nullopt);

struct BoundsViolation {
  ProfileRow row;
  std::string rule;
};

/// Per-row check of the presentation-cardinality bounds: the lower bound
/// eta >= C(e,2) - r, the small-codimension upper bounds (r <= 2 and r = 3),
/// and the complete-intersection multiplicity bound m >= 2^(e-1) when
/// eta = e - 1.  Violations are reported, not thrown.
struct BoundsReport {
  std::vector<BoundsViolation> violations;
  Int rows_checked = 0;

  bool ok() const { return violations.empty(); }
};

BoundsReport verify_bounds(const EtaProfile& profile);

} // namespace kunzkit
