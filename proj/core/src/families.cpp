#include "kunzkit/families.hpp"

#include <algorithm>

#include "kunzkit/nilsemigroup.hpp"

namespace kunzkit {

namespace {

// Canonicalize, insist the raw list was already minimal (a transcription bug
// in a family formula shows up here), then verify (m, e, eta) through the
// nilsemigroup count and, at small multiplicity, the direct scan.
NumericalSemigroup finish(std::vector<Int> raw, Int m, Int e, Int eta_value,
                          const char* family) {
  std::sort(raw.begin(), raw.end());
  NumericalSemigroup s = canonicalize(raw);
  if (s.generators() != raw)
    throw invariant_error(std::string(family) + ": generator list is not minimal");
  if (s.multiplicity() != m || s.embedding_dimension() != e)
    throw invariant_error(std::string(family) + ": (m, e) postcondition failed");
  if (eta(from_semigroup(s)).eta != eta_value)
    throw invariant_error(std::string(family) + ": eta postcondition failed");
  if (m <= 14 && minimal_presentation_direct(s).eta() != eta_value)
    throw invariant_error(std::string(family) + ": direct oracle disagrees");
  return s;
}

} // namespace

Int next_prime_above(Int n) {
  auto is_prime = [](Int v) {
    if (v < 2) return false;
    for (Int d = 2; d * d <= v; ++d)
      if (v % d == 0) return false;
    return true;
  };
  Int p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

NumericalSemigroup max_embdim_family(Int m) {
  if (m < 2) throw validation_error("max_embdim requires m >= 2");
  std::vector<Int> raw;
  for (Int g = m; g < 2 * m; ++g) raw.push_back(g);
  return finish(std::move(raw), m, m, choose2(m), "max_embdim");
}

NumericalSemigroup rosales_family(Int m, Int e) {
  if (e < 3 || e > m) throw validation_error("rosales requires 3 <= e <= m");
  const Int r = m - e;
  std::vector<Int> raw{m, m + 1};
  for (Int j = r + 2; j <= m - 1; ++j)
    raw.push_back(checked_add(checked_mul(r + 1, m), j));
  return finish(std::move(raw), m, e, choose2(e), "rosales");
}

NumericalSemigroup interval_family(Int e, Int r, Int s) {
  if (e < 4) throw validation_error("interval requires e >= 4");
  if (r < 0) throw validation_error("interval requires r >= 0");
  if (s < 0 || s > std::min(e - 2, r))
    throw validation_error("interval requires 0 <= s <= min(e-2, r)");
  const Int m = e + r;
  if (s == e - 2) {
    // gluing of the e-1 max-embedding-dimension semigroup; m >= 2e-2 makes m
    // a non-atom member, re-checked by glue itself
    NumericalSemigroup t = max_embdim_family(e - 1);
    if (!contains(t, m) ||
        std::binary_search(t.generators().begin(), t.generators().end(), m))
      throw validation_error("interval gluing case: m is not a non-atom of the base");
    const Int q = next_prime_above(m);
    NumericalSemigroup zplus({1});
    NumericalSemigroup glued = glue(t, zplus, m, q); // q*t + m*Z
    if (glued.multiplicity() != m || glued.embedding_dimension() != e ||
        eta(from_semigroup(glued)).eta != choose2(e) - s)
      throw invariant_error("interval gluing case: postcondition failed");
    return glued;
  }
  // explicit list, valid for s <= min(e-3, r)
  std::vector<Int> raw{m, 4 * m - 1, (2 * r - 2 * s + 3) * m + (s + 1)};
  for (Int i = 1; i <= s; ++i) raw.push_back((2 * r - 2 * s + 4) * m + i);
  for (Int j = 2 * s + 2; j <= e + s - 2; ++j) raw.push_back((4 * r - 4 * s + 5) * m + j);
  return finish(std::move(raw), m, e, choose2(e) - s, "interval");
}

NumericalSemigroup extra_betti_family(Int e, Int r) {
  if (e < 5) throw validation_error("extra_betti requires e >= 5");
  if (r < 3) throw validation_error("extra_betti requires r >= 3");
  const Int m = e + r;
  std::vector<Int> raw{m, 2 * m - 1, (r - 1) * m + 2, (2 * r - 2) * m + 3};
  for (Int i = 5; i <= e; ++i) raw.push_back((2 * r - 2) * m + i);
  return finish(std::move(raw), m, e, choose2(e) + 1, "extra_betti");
}

NumericalSemigroup eta3_family(Int m) {
  if (m < 8) throw validation_error("eta3 requires m >= 8");
  const Int a = next_prime_above(m);
  NumericalSemigroup base({4, 5, 6});
  NumericalSemigroup zplus({1});
  NumericalSemigroup s = glue(base, zplus, m, a); // a*<4,5,6> + m*Z
  if (s.multiplicity() != m || s.embedding_dimension() != 4 ||
      eta(from_semigroup(s)).eta != 3)
    throw invariant_error("eta3: postcondition failed");
  return s;
}

NumericalSemigroup embdim4_family(Int m, Int eta_target) {
  if (eta_target < 6) throw validation_error("embdim4 requires eta >= 6");
  if (4 * m < (eta_target - 2) * (eta_target - 2))
    throw validation_error("embdim4 requires 4m >= (eta-2)^2");
  std::vector<Int> raw;
  if (eta_target % 2 == 0) {
    const Int k = (eta_target - 4) / 2;
    raw = {m, (k + 1) * m - 1, (m - k * k - k) * m + k, (m - k * k - k) * m + k + 1};
  } else {
    const Int k = (eta_target - 3) / 2;
    raw = {m, k * m - 1, (m - k * k - 1) * m + k, (m - k * k - 1) * m + k + 1};
  }
  return finish(std::move(raw), m, 4, eta_target, "embdim4");
}

NumericalSemigroup extend_eta(const NumericalSemigroup& s_prime, Int m) {
  if (s_prime.multiplicity() == 1)
    throw validation_error("extend requires a base with gaps");
  const Int threshold = s_prime.multiplicity() + frobenius(s_prime);
  if (m < threshold)
    throw validation_error("extend requires m >= m(S') + frobenius(S') = " +
                           std::to_string(threshold));
  NumericalSemigroup zplus({1});
  NumericalSemigroup s = glue(s_prime, zplus, m, m + 1); // (m+1)*S' + m*Z
  const Int want_eta = minimal_presentation_direct(s_prime).eta() + 1;
  if (s.multiplicity() != m ||
      s.embedding_dimension() != s_prime.embedding_dimension() + 1 ||
      eta(from_semigroup(s)).eta != want_eta)
    throw invariant_error("extend: postcondition failed");
  return s;
}

NumericalSemigroup fixture_extra_betti_e4() {
  return finish({7, 15, 17, 33}, 7, 4, 7, "extra_betti_e4_fixture");
}

NumericalSemigroup build_family(FamilySpec& spec) {
  auto param = [&](const std::string& key) {
    auto it = spec.parameters.find(key);
    if (it == spec.parameters.end())
      throw validation_error("family '" + spec.name + "' needs parameter --" + key);
    return it->second;
  };
  NumericalSemigroup s = [&]() {
    if (spec.name == "max_embdim") return max_embdim_family(param("m"));
    if (spec.name == "rosales") return rosales_family(param("m"), param("e"));
    if (spec.name == "interval") return interval_family(param("e"), param("r"), param("s"));
    if (spec.name == "extra_betti") return extra_betti_family(param("e"), param("r"));
    if (spec.name == "eta3") return eta3_family(param("m"));
    if (spec.name == "embdim4") return embdim4_family(param("m"), param("eta"));
    if (spec.name == "extend") {
      std::vector<Int> base;
      for (Int i = 0;; ++i) {
        auto it = spec.parameters.find("g" + std::to_string(i));
        if (it == spec.parameters.end()) break;
        base.push_back(it->second);
      }
      if (base.empty()) throw validation_error("family 'extend' needs base generators");
      return extend_eta(canonicalize(base), param("m"));
    }
    throw validation_error("unknown family '" + spec.name + "'");
  }();
  spec.expected_m = s.multiplicity();
  spec.expected_e = s.embedding_dimension();
  spec.expected_eta = eta(from_semigroup(s)).eta;
  return s;
}

} // namespace kunzkit
