#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "kunzkit/families.hpp"
#include "kunzkit/survey.hpp"

using namespace kunzkit;

namespace {

KunzVector kv(Int m, std::vector<Int> x) { return KunzVector{m, std::move(x)}; }

} // namespace

TEST_CASE("kunz conditions") {
  // the running 4-generator example, coordinates (a_i - i) / 10
  CHECK(satisfies_kunz_conditions(kv(10, {7, 2, 2, 2, 4, 4, 4, 4, 6})));
  CHECK_FALSE(satisfies_kunz_conditions(kv(10, {7, 2, 2, 2, 4, 4, 4, 4, 0})));
  // 2 x_1 >= x_2 fails
  CHECK_FALSE(satisfies_kunz_conditions(kv(3, {1, 3})));
  CHECK(satisfies_kunz_conditions(kv(3, {1, 2})));
}

TEST_CASE("enumeration of small boxes") {
  auto v3 = enumerate_kunz_vectors(3, 2);
  CHECK(v3 == std::vector<KunzVector>{kv(3, {1, 1}), kv(3, {1, 2}), kv(3, {2, 1}),
                                      kv(3, {2, 2})});

  auto v2 = enumerate_kunz_vectors(2, 3);
  CHECK(v2 == std::vector<KunzVector>{kv(2, {1}), kv(2, {2}), kv(2, {3})});

  // lexicographic emission, and every emitted vector satisfies the conditions
  auto v5 = enumerate_kunz_vectors(5, 3);
  CHECK(std::is_sorted(v5.begin(), v5.end()));
  for (const auto& v : v5) CHECK(satisfies_kunz_conditions(v));

  // the DFS prunes to exactly the filter of the full box
  Int box_count = 0;
  std::vector<Int> x(4, 1);
  for (;;) {
    if (satisfies_kunz_conditions(kv(5, x))) ++box_count;
    std::size_t i = 4;
    while (i > 0 && x[i - 1] == 3) x[--i] = 1;
    if (i == 0) break;
    ++x[i - 1];
  }
  CHECK(static_cast<Int>(v5.size()) == box_count);
}

TEST_CASE("semigroups recovered from kunz vectors") {
  CHECK(semigroup_from_kunz(kv(3, {1, 1})).generators() == std::vector<Int>{3, 4, 5});
  CHECK(semigroup_from_kunz(kv(3, {2, 2})).generators() == std::vector<Int>{3, 7, 8});
  // a_2 = 8 = 4 + 4 is not an atom
  CHECK(semigroup_from_kunz(kv(3, {1, 2})).generators() == std::vector<Int>{3, 4});
  CHECK(semigroup_from_kunz(kv(10, {7, 2, 2, 2, 4, 4, 4, 4, 6})).generators() ==
        std::vector<Int>{10, 22, 23, 24});
}

TEST_CASE("nilsemigroup from a kunz vector matches the semigroup route") {
  for (auto v : {kv(3, {1, 1}), kv(3, {1, 2}), kv(10, {7, 2, 2, 2, 4, 4, 4, 4, 6}),
                 kv(6, {2, 1, 3, 1, 2})}) {
    if (!satisfies_kunz_conditions(v)) continue;
    auto direct = nilsemigroup_from_kunz(v);
    auto via_semigroup = from_semigroup(semigroup_from_kunz(v));
    CAPTURE(v.m);
    CAPTURE(v.x);
    CHECK(direct == via_semigroup);
  }
  CHECK_THROWS_AS(nilsemigroup_from_kunz(kv(3, {1, 3})), validation_error);
}

TEST_CASE("survey of multiplicity 4") {
  auto profile = survey({4});
  // e = 4 is reached only by the max embedding dimension nilsemigroup
  auto top = profile.achieved(4, 4);
  CHECK(top == std::set<Int>{6});
  for (const auto& row : profile.rows)
    if (row.e == 4) {
      CHECK(row.nilsemigroup_count == 1);
      CHECK(row.witness_generators == std::vector<Int>{4, 5, 6, 7});
    }
  CHECK(profile.achieved(4, 3) == std::set<Int>{2, 3});
  CHECK(profile.achieved(4, 2) == std::set<Int>{1});
}

TEST_CASE("multiplicity 7 misses eta 3 in embedding dimension 4") {
  SurveyOptions options;
  options.bound = 10;
  auto profile = survey({7}, options);
  auto achieved = profile.achieved(7, 4);
  CHECK(achieved == std::set<Int>{4, 5, 6, 7});
  CHECK_FALSE(achieved.count(3));
}

TEST_CASE("survey equals the per-vector oracle run without dedup") {
  SurveyOptions options;
  options.bound = 8;
  auto profile = survey({6}, options);
  std::set<std::pair<Int, Int>> no_dedup;
  for (const auto& v : enumerate_kunz_vectors(6, 8)) {
    auto s = semigroup_from_kunz(v);
    no_dedup.emplace(s.embedding_dimension(), minimal_presentation_direct(s).eta());
  }
  CHECK(profile.achieved_pairs(6) == no_dedup);
}

TEST_CASE("vectors sharing a nilsemigroup share eta") {
  std::map<std::vector<Int>, std::vector<KunzVector>> by_table;
  for (const auto& v : enumerate_kunz_vectors(5, 6))
    by_table[nilsemigroup_from_kunz(v).flattened_table()].push_back(v);
  Int groups_checked = 0;
  for (const auto& [table, vectors] : by_table) {
    if (vectors.size() < 2) continue;
    // sample the first and last member of each class
    auto first = minimal_presentation_direct(semigroup_from_kunz(vectors.front())).eta();
    auto last = minimal_presentation_direct(semigroup_from_kunz(vectors.back())).eta();
    CHECK(first == last);
    if (++groups_checked == 25) break;
  }
  CHECK(groups_checked > 0);
}

TEST_CASE("survey output does not depend on the worker count") {
  SurveyOptions one;
  one.bound = 8;
  one.threads = 1;
  SurveyOptions four;
  four.bound = 8;
  four.threads = 4;
  CHECK(survey({6, 7}, one) == survey({6, 7}, four));
}

TEST_CASE("distinct nilsemigroup listing is deterministic and deduplicated") {
  auto distinct = distinct_nilsemigroups(5, 8);
  CHECK(distinct.size() == 31);
  for (std::size_t i = 1; i < distinct.size(); ++i)
    CHECK(distinct[i - 1].first_vector < distinct[i].first_vector);
  CHECK(distinct_nilsemigroups(5, 8, 3).size() == 31);
}

TEST_CASE("bound verification accepts the enumerated profiles") {
  SurveyOptions options;
  options.bound = 8;
  auto profile = survey({2, 3, 4, 5, 6}, options);
  auto report = verify_bounds(profile);
  CHECK(report.ok());
  CHECK(report.rows_checked == static_cast<Int>(profile.rows.size()));

  // the staircase lower bound, row by row
  for (const auto& row : profile.rows)
    CHECK(row.eta >= eta_lower_bound(row.e, row.m - row.e));
}

TEST_CASE("bound verification flags a fabricated complete intersection") {
  EtaProfile fake;
  ProfileRow row;
  row.m = 12;
  row.e = 5;
  row.eta = 4; // eta = e - 1 needs m >= 16
  row.witness_generators = {12, 13, 14, 15, 16};
  row.nilsemigroup_count = 1;
  row.bound = 8;
  fake.rows.push_back(row);
  auto report = verify_bounds(fake);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].rule == "eta = e - 1 implies m >= 2^(e-1)");
}

TEST_CASE("stabilization checks") {
  CHECK(stabilization_check(2, 1));
  CHECK(stabilization_check(2, 4));
  // bound 1 only sees the max embedding dimension vector
  CHECK_FALSE(stabilization_check(3, 1));
  CHECK(stabilization_check(3, 2));
  // at m = 7 the 2-generated semigroups need coordinates up to 6, so the
  // full profile only stabilizes from bound 6 on; the e = 4 slice is already
  // stable at 5
  CHECK_FALSE(stabilization_check(7, 5));
  CHECK(stabilization_check(7, 5, 4));
  CHECK(stabilization_check(7, 6));
}

TEST_CASE("filters and stabilization stamps") {
  SurveyOptions options;
  options.bound = 5;
  options.e_filter = 4;
  options.check_stabilization = true;
  auto profile = survey({7}, options);
  CHECK_FALSE(profile.rows.empty());
  for (const auto& row : profile.rows) {
    CHECK(row.e == 4);
    REQUIRE(row.stabilized.has_value());
    CHECK(*row.stabilized == true);
    CHECK(row.bound == 5);
  }

  SurveyOptions capped;
  capped.bound = 8;
  capped.max_eta = 3;
  auto low = survey({6}, capped);
  for (const auto& row : low.rows) CHECK(row.eta <= 3);
}

TEST_CASE("a pre-set cancel flag truncates the survey") {
  std::atomic<bool> cancel{true};
  SurveyOptions options;
  options.bound = 8;
  options.cancel = &cancel;
  auto profile = survey({6}, options);
  CHECK(profile.truncated);
}

TEST_CASE("every profile row's witness reproduces its eta") {
  SurveyOptions options;
  options.bound = 8;
  auto profile = survey({5, 6}, options);
  for (const auto& row : profile.rows) {
    auto s = canonicalize(row.witness_generators);
    CAPTURE(row.witness_generators);
    CHECK(s.multiplicity() == row.m);
    CHECK(s.embedding_dimension() == row.e);
    CHECK(eta(from_semigroup(s)).eta == row.eta);
  }
}
