#pragma once

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "kunzkit/nilsemigroup.hpp"
#include "kunzkit/survey.hpp"

namespace kunzkit::cli {

/// Full dispatcher behind the kunzkit binary.  Exit codes: 0 success,
/// 1 internal invariant failure, 2 user error, 130 interrupted.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* cancel = nullptr);

/// Everything `info` reports about one semigroup, computed through both the
/// direct scan and the nilsemigroup route.
struct InfoReport {
  NumericalSemigroup semigroup;
  AperySet apery;
  Int frobenius_number; // -1 when there are no gaps
  KunzPoset poset;
  NilPresentationSummary nil_summary;
  std::vector<OuterBettiElement> outer_betti;
  MinimalPresentation presentation; // lifted; verified against the direct scan
  bool agreement;
};

InfoReport make_info_report(const NumericalSemigroup& s);

nlohmann::json info_json(const InfoReport& report);
std::string info_text(const InfoReport& report);
std::string poset_dot(const KunzPoset& poset);

std::string profile_csv(const EtaProfile& profile);
nlohmann::json profile_json(const EtaProfile& profile);
EtaProfile profile_from_json(const nlohmann::json& j);
std::string profile_staircase(const EtaProfile& profile);

} // namespace kunzkit::cli
