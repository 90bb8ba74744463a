// Acceptance suite: one line per criterion, exit code = number of failures.
// Run with no arguments for everything, or pass criterion numbers to select.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kunzkit/families.hpp"
#include "kunzkit/nilsemigroup.hpp"
#include "kunzkit/survey.hpp"

using namespace kunzkit;

namespace {

Factorization fz(std::vector<Int> exps) { return Factorization{std::move(exps)}; }

struct Criterion {
  int number;
  std::string description;
  bool (*check)(std::ostream&);
};

// ---- criterion 1: worked-example golden values --------------------------

bool golden_suite(std::ostream& log) {
  bool ok = true;
  auto expect = [&](bool cond, const std::string& what) {
    if (!cond) {
      log << "    failed: " << what << "\n";
      ok = false;
    }
  };

  auto s0 = canonicalize({6, 9, 20});
  auto p0 = minimal_presentation_direct(s0);
  expect(p0.eta() == 2, "eta(<6,9,20>) == 2");
  expect(p0.betti_elements == std::vector<Int>{18, 60}, "Betti(<6,9,20>) == {18, 60}");

  auto s3 = canonicalize({10, 22, 23, 24});
  expect(apery_set(s3).elements() == std::vector<Int>{0, 71, 22, 23, 24, 45, 46, 47, 48, 69},
         "Ap(<10,22,23,24>)");
  auto n3 = from_semigroup(s3);
  expect(eta(n3).eta == 4, "eta(<10,22,23,24>) == 4");
  expect(lift_presentation(n3, s3).betti_elements == std::vector<Int>{44, 46, 70, 72},
         "Betti(<10,22,23,24>) == {44, 46, 70, 72}");
  auto trades3 = nil_minimal_presentation(n3);
  expect(trades3.size() == 1 && trades3[0] == Trade{fz({1, 0, 1}), fz({0, 2, 0}), 6},
         "nil presentation of <10,22,23,24> is ((1,0,1), (0,2,0))");

  auto s1 = canonicalize({6, 7, 8, 9, 10, 11});
  auto n1 = from_semigroup(s1);
  expect(eta(n1).eta == 15, "eta(<6..11>) == 15");
  expect(outer_betti_elements(n1).size() == 15, "15 outer Betti elements for <6..11>");
  expect(nil_minimal_presentation(n1).empty(), "empty nil presentation for <6..11>");

  auto s4 = canonicalize({6, 7, 8, 9});
  auto n4 = from_semigroup(s4);
  auto mins4 = minimal_nil_factorizations(n4);
  expect(std::find(mins4.begin(), mins4.end(), fz({0, 2, 1})) != mins4.end(),
         "(0,2,1) is a minimal nil factorization of <6,7,8,9>");
  bool in_outer = false;
  for (const auto& b : outer_betti_elements(n4))
    for (const auto& z : b.factorizations)
      if (z == fz({0, 2, 1})) in_outer = true;
  expect(!in_outer, "(0,2,1) lies in no outer Betti element");
  expect(!factorization_graph(s4, 25).is_betti(), "25 is not a Betti element of <6,7,8,9>");

  auto sf = canonicalize({7, 15, 17, 33});
  auto outer_f = outer_betti_elements(from_semigroup(sf));
  auto has_singleton = [&](const Factorization& z) {
    return std::any_of(outer_f.begin(), outer_f.end(), [&](const OuterBettiElement& b) {
      return b.factorizations == std::vector<Factorization>{z};
    });
  };
  expect(has_singleton(fz({2, 1, 0})), "<7,15,17,33> has outer Betti {(2,1,0)}");
  expect(has_singleton(fz({1, 2, 0})), "<7,15,17,33> has outer Betti {(1,2,0)}");
  return ok;
}

// ---- criterion 2: oracle equivalence over every enumerated nilsemigroup --

bool oracle_equivalence(std::ostream& log) {
  Int instances = 0;
  Int mismatches = 0;
  for (Int m = 2; m <= 8; ++m) {
    for (const auto& d : distinct_nilsemigroups(m, 8)) {
      ++instances;
      const auto s = semigroup_from_kunz(d.first_vector);
      const auto direct = minimal_presentation_direct(s);
      bool good = eta(d.nilsemigroup).eta == direct.eta();
      if (good) {
        try {
          good = lift_presentation(d.nilsemigroup, s).betti_elements == direct.betti_elements;
        } catch (const invariant_error&) {
          good = false;
        }
      }
      if (!good) {
        ++mismatches;
        log << "    mismatch at m=" << m << " x=(";
        for (std::size_t i = 0; i < d.first_vector.x.size(); ++i)
          log << (i ? "," : "") << d.first_vector.x[i];
        log << ")\n";
      }
    }
  }
  log << "    " << instances << " distinct nilsemigroups, " << mismatches << " mismatches\n";
  return mismatches == 0 && instances > 1000;
}

// ---- criterion 3: family sweeps ------------------------------------------

bool family_sweeps(std::ostream& log) {
  bool ok = true;
  auto expect = [&](const NumericalSemigroup& s, Int m, Int e, Int eta_value,
                    const std::string& what) {
    if (s.multiplicity() != m || s.embedding_dimension() != e ||
        eta(from_semigroup(s)).eta != eta_value) {
      log << "    failed: " << what << "\n";
      ok = false;
    }
  };
  for (Int e = 4; e <= 7; ++e)
    for (Int r = 0; r <= e - 1; ++r)
      for (Int s = 0; s <= std::min(e - 2, r); ++s)
        expect(interval_family(e, r, s), e + r, e, choose2(e) - s,
               "interval e=" + std::to_string(e) + " r=" + std::to_string(r) +
                   " s=" + std::to_string(s));
  for (Int e = 5; e <= 8; ++e)
    for (Int r = 3; r <= 6; ++r)
      expect(extra_betti_family(e, r), e + r, e, choose2(e) + 1,
             "extra_betti e=" + std::to_string(e) + " r=" + std::to_string(r));
  for (Int eta_target = 6; eta_target <= 12; ++eta_target) {
    const Int m0 = ((eta_target - 2) * (eta_target - 2) + 3) / 4;
    for (Int m : {m0, m0 + 5})
      expect(embdim4_family(m, eta_target), m, 4, eta_target,
             "embdim4 m=" + std::to_string(m) + " eta=" + std::to_string(eta_target));
  }
  for (Int m = 8; m <= 30; ++m)
    expect(eta3_family(m), m, 4, 3, "eta3 m=" + std::to_string(m));
  expect(extend_eta(canonicalize({4, 5, 6}), 11), 11, 4, 3, "extend <4,5,6> at m=11");
  expect(extend_eta(canonicalize({2, 3}), 5), 5, 3, 2, "extend <2,3> at m=5");
  return ok;
}

// ---- criterion 4: bound verification over the criterion-2 instances ------

bool bound_verification(std::ostream& log) {
  Int checked = 0;
  Int violations = 0;
  for (Int m = 2; m <= 8; ++m) {
    for (const auto& d : distinct_nilsemigroups(m, 8)) {
      ++checked;
      const Int e = d.nilsemigroup.embedding_dimension();
      const Int r = d.nilsemigroup.codimension();
      const Int value = eta(d.nilsemigroup).eta;
      bool good = value >= eta_lower_bound(e, r);
      if (const auto upper = eta_upper_bound_small_codim(e, r); upper && value > *upper)
        good = false;
      if (!complete_intersection_bound_ok(m, e, value)) good = false;
      if (!good) {
        ++violations;
        log << "    violation at m=" << m << " e=" << e << " eta=" << value << "\n";
      }
    }
  }
  log << "    " << checked << " instances, " << violations << " violations\n";
  return violations == 0;
}

// ---- criterion 5: desk-scale atlas reproduction ---------------------------

bool figure_reproduction(std::ostream& log) {
  bool ok = true;
  SurveyOptions options;
  options.bound = 8;
  auto profile = survey({2, 3, 4, 5, 6, 7, 8}, options);

  // (a) every family value at m <= 8 appears in the achieved sets
  struct Target {
    Int m, e, eta;
    std::string label;
  };
  std::vector<Target> targets;
  for (Int m = 2; m <= 8; ++m) targets.push_back({m, m, choose2(m), "max_embdim"});
  for (Int e = 4; e <= 7; ++e)
    for (Int r = 0; r <= e - 1 && e + r <= 8; ++r)
      for (Int s = 0; s <= std::min(e - 2, r); ++s)
        targets.push_back({e + r, e, choose2(e) - s, "interval"});
  targets.push_back({8, 5, choose2(5) + 1, "extra_betti"});
  targets.push_back({8, 4, 3, "eta3"});
  targets.push_back({4, 4, 6, "embdim4"});
  targets.push_back({7, 4, 7, "embdim4"});
  targets.push_back({5, 3, 2, "extend <2,3>"});
  for (const auto& t : targets)
    if (!profile.achieved(t.m, t.e).count(t.eta)) {
      log << "    missing family value " << t.label << " (m=" << t.m << ", e=" << t.e
          << ", eta=" << t.eta << ")\n";
      ok = false;
    }

  // (b) the (7, 4) slice misses eta = 3, and the slice's stabilization gate
  // holds from bound 5 on
  auto slice = profile.achieved(7, 4);
  if (slice.count(3)) {
    log << "    eta = 3 unexpectedly achieved at m=7, e=4\n";
    ok = false;
  }
  if (!stabilization_check(7, 5, 4)) {
    log << "    e=4 slice of m=7 not stable between bounds 5 and 10\n";
    ok = false;
  }
  // computed facts about the unfiltered gate: 2-generated semigroups need
  // coordinates up to 6, so the full profile stabilizes only from bound 6
  if (stabilization_check(7, 5)) {
    log << "    full m=7 profile unexpectedly stable between bounds 5 and 10\n";
    ok = false;
  }
  if (!stabilization_check(7, 6)) {
    log << "    full m=7 profile not stable between bounds 6 and 12\n";
    ok = false;
  }
  return ok;
}

// ---- criterion 7: standalone property suites ------------------------------

Int count_components(const std::vector<Factorization>& facts) {
  std::vector<std::size_t> parent(facts.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  if (facts.empty()) return 0;
  for (std::size_t c = 0; c < facts.front().exponents.size(); ++c) {
    std::size_t first = facts.size();
    for (std::size_t v = 0; v < facts.size(); ++v)
      if (facts[v].exponents[c] > 0) {
        if (first == facts.size())
          first = v;
        else
          parent[find(v)] = find(first);
      }
  }
  std::set<std::size_t> roots;
  for (std::size_t v = 0; v < facts.size(); ++v) roots.insert(find(v));
  return static_cast<Int>(roots.size());
}

bool property_suites(std::ostream& log) {
  bool ok = true;

  // (a) quotient identity at every maximal non-atom, all m <= 7
  Int quotients = 0;
  for (Int m = 2; m <= 7; ++m) {
    for (const auto& d : distinct_nilsemigroups(m, 8)) {
      const auto& n = d.nilsemigroup;
      const auto outer = outer_betti_elements(n);
      const Int b_n = static_cast<Int>(outer.size());
      for (Int p = 1; p < n.size(); ++p) {
        if (std::binary_search(n.atoms().begin(), n.atoms().end(), p)) continue;
        if (!is_maximal(n, p)) continue;
        ++quotients;
        const auto zp = element_factorizations(n, p);
        const Int k = count_components(zp) - 1;
        const Int b_q =
            static_cast<Int>(outer_betti_elements(quotient_by_maximal(n, p)).size());
        Int divisible = 0;
        for (const auto& b : outer) {
          bool hit = false;
          for (Int i : b.support) {
            std::vector<Factorization> shifted;
            for (const auto& z : b.factorizations)
              if (z.exponents[static_cast<std::size_t>(i)] > 0) {
                Factorization w = z;
                --w.exponents[static_cast<std::size_t>(i)];
                shifted.push_back(std::move(w));
              }
            std::sort(shifted.begin(), shifted.end());
            if (shifted == zp) hit = true;
          }
          if (hit) ++divisible;
        }
        if (b_n + k + 1 - b_q != divisible) {
          log << "    quotient identity failed at m=" << m << " p=" << p << "\n";
          ok = false;
        }
      }
    }
  }
  log << "    quotient identity checked at " << quotients << " maximal non-atoms\n";

  // (b) Apery factorization structure of the constructions whose arguments
  // rest on unique expressions: the interval family's explicit case plus the
  // extra-Betti and embedding-dimension-4 lists.  Uniqueness holds except at
  // the top explicit row s = e-3, where the chain element (r-s+2)(4m-1)
  // lands exactly on a_{e+s-2} = n_s + n_{s+1} and exactly one Apery element
  // carries two expressions.  The s = e-2 members are gluings and make no
  // uniqueness promise at all.
  Int apery_checked = 0;
  auto count_repeats = [&](const NumericalSemigroup& s, const std::string& label) {
    const auto ap = apery_set(s);
    Int twins = 0;
    for (Int i = 0; i < s.multiplicity(); ++i) {
      const auto count = factorizations(s, ap[i]).size();
      if (count == 2)
        ++twins;
      else if (count != 1) {
        log << "    unexpected Apery factorization count in " << label << "\n";
        ok = false;
      }
    }
    ++apery_checked;
    return twins;
  };
  auto check_unique = [&](const NumericalSemigroup& s, const std::string& label) {
    if (count_repeats(s, label) != 0) {
      log << "    repeated Apery expression in " << label << "\n";
      ok = false;
    }
  };
  for (Int e = 4; e <= 7; ++e)
    for (Int r = 0; r <= e - 1; ++r)
      for (Int s = 0; s <= std::min(e - 3, r); ++s) {
        const std::string label = "interval(" + std::to_string(e) + "," + std::to_string(r) +
                                  "," + std::to_string(s) + ")";
        if (s <= e - 4) {
          check_unique(interval_family(e, r, s), label);
        } else if (count_repeats(interval_family(e, r, s), label) != 1) {
          log << "    expected exactly one twin Apery expression in " << label << "\n";
          ok = false;
        }
      }
  for (Int e = 5; e <= 8; ++e)
    for (Int r = 3; r <= 6; ++r)
      check_unique(extra_betti_family(e, r),
                   "extra_betti(" + std::to_string(e) + "," + std::to_string(r) + ")");
  for (Int eta_target = 6; eta_target <= 12; ++eta_target) {
    const Int m0 = ((eta_target - 2) * (eta_target - 2) + 3) / 4;
    for (Int m : {m0, m0 + 5})
      check_unique(embdim4_family(m, eta_target),
                   "embdim4(" + std::to_string(m) + "," + std::to_string(eta_target) + ")");
  }
  log << "    Apery uniqueness checked on " << apery_checked << " constructions\n";

  // (c) poset -> addition table round-trip, all m <= 7
  Int round_trips = 0;
  for (Int m = 2; m <= 7; ++m)
    for (const auto& d : distinct_nilsemigroups(m, 8)) {
      ++round_trips;
      if (!(addition_from_poset(kunz_poset(d.nilsemigroup)) == d.nilsemigroup)) {
        log << "    poset round-trip failed at m=" << m << "\n";
        ok = false;
      }
    }
  log << "    poset round-trip on " << round_trips << " nilsemigroups\n";
  return ok;
}

} // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria{
      {1, "worked-example golden suite", golden_suite},
      {2, "oracle equivalence for every nilsemigroup with m <= 8, bound 8", oracle_equivalence},
      {3, "family sweeps with exact (m, e, eta) postconditions", family_sweeps},
      {4, "zero bound violations across the enumerated instances", bound_verification},
      {5, "desk-scale achieved-eta atlas with the m=7 gap", figure_reproduction},
      {7, "property suites: quotient identity, Apery uniqueness, poset round-trip",
       property_suites},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    std::ostringstream log;
    const auto start = std::chrono::steady_clock::now();
    const bool passed = c.check(log);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cout << "criterion " << c.number << ": " << (passed ? "PASS" : "FAIL") << " ("
              << ms << " ms) - " << c.description << "\n"
              << log.str();
    if (!passed) ++failures;
  }
  if (selected.empty() || selected.count(6))
    std::cout << "criterion 6: SKIP - full-scale atlas and the m=11 nonexistence claim are "
                 "opt-in extended runs (see README)\n";
  return failures;
}
