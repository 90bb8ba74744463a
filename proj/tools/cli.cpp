#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "kunzkit/families.hpp"

namespace kunzkit::cli {

namespace {

nlohmann::json exponents_json(const Factorization& z) { return nlohmann::json(z.exponents); }

nlohmann::json trades_json(const std::vector<Trade>& trades) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : trades)
    arr.push_back({{"left", exponents_json(t.left)},
                   {"right", exponents_json(t.right)},
                   {"element", t.element}});
  return arr;
}

std::string join(const std::vector<Int>& values, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::string factorization_text(const Factorization& z) {
  return "(" + join(z.exponents, ",") + ")";
}

} // namespace

InfoReport make_info_report(const NumericalSemigroup& s) {
  KunzNilsemigroup n = from_semigroup(s);
  InfoReport report{
      s,
      apery_set(s),
      s.multiplicity() == 1 ? -1 : frobenius(s),
      kunz_poset(n),
      eta(n),
      outer_betti_elements(n),
      lift_presentation(n, s), // throws invariant_error when the routes disagree
      true,
  };
  report.agreement = report.presentation.eta() == report.nil_summary.eta &&
                     report.presentation.eta() == minimal_presentation_direct(s).eta();
  return report;
}

nlohmann::json info_json(const InfoReport& report) {
  const auto& s = report.semigroup;
  nlohmann::json outer = nlohmann::json::array();
  for (const auto& b : report.outer_betti) {
    nlohmann::json member = nlohmann::json::array();
    for (const auto& z : b.factorizations) member.push_back(exponents_json(z));
    outer.push_back(std::move(member));
  }
  nlohmann::json covers = nlohmann::json::array();
  for (const auto& c : report.poset.covers)
    covers.push_back({{"lower", c.lower}, {"upper", c.upper}, {"atom", c.atom}});
  return {{"semigroup",
           {{"generators", s.generators()},
            {"m", s.multiplicity()},
            {"e", s.embedding_dimension()},
            {"r", s.codimension()},
            {"frobenius", report.frobenius_number},
            {"apery", report.apery.elements()},
            {"eta", report.presentation.eta()},
            {"betti", report.presentation.betti_elements},
            {"presentation", trades_json(report.presentation.trades)},
            {"agreement", report.agreement},
            {"kunz",
             {{"atoms", report.poset.atoms},
              {"covers", std::move(covers)},
              {"outer_betti", std::move(outer)},
              {"nil_trades", trades_json(report.nil_summary.trades)}}}}}};
}

std::string info_text(const InfoReport& report) {
  const auto& s = report.semigroup;
  std::ostringstream out;
  out << "S = <" << join(s.generators(), ", ") << ">\n";
  out << "m = " << s.multiplicity() << "  e = " << s.embedding_dimension()
      << "  r = " << s.codimension() << "  frobenius = " << report.frobenius_number << "\n";
  out << "Apery: {" << join(report.apery.elements(), ", ") << "}\n";
  out << "Kunz atoms: [" << join(report.poset.atoms, ", ") << "]\n";
  out << "covers (lower -> upper via atom):\n";
  for (const auto& c : report.poset.covers)
    out << "  " << c.lower << " -> " << c.upper << "  [" << c.atom << "]\n";
  out << "outer Betti elements (" << report.outer_betti.size() << "):\n";
  for (const auto& b : report.outer_betti) {
    out << "  {";
    for (std::size_t i = 0; i < b.factorizations.size(); ++i)
      out << (i ? ", " : "") << factorization_text(b.factorizations[i]);
    out << "}\n";
  }
  out << "nilsemigroup trades (" << report.nil_summary.trades.size() << "):\n";
  for (const auto& t : report.nil_summary.trades)
    out << "  " << factorization_text(t.left) << " ~ " << factorization_text(t.right) << " at "
        << t.element << "\n";
  out << "presentation (" << report.presentation.trades.size() << " trades):\n";
  for (const auto& t : report.presentation.trades)
    out << "  " << factorization_text(t.left) << " ~ " << factorization_text(t.right) << " at "
        << t.element << "\n";
  out << "Betti(S) = {" << join(report.presentation.betti_elements, ", ") << "}\n";
  out << "eta = " << report.presentation.eta()
      << "  (nilsemigroup route: " << report.nil_summary.eta
      << ", agreement: " << (report.agreement ? "yes" : "no") << ")\n";
  return out.str();
}

std::string poset_dot(const KunzPoset& poset) {
  static const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
                                   "#a65628", "#f781bf", "#17becf", "#666666", "#bcbd22"};
  std::map<Int, std::size_t> atom_index;
  for (std::size_t i = 0; i < poset.atoms.size(); ++i) atom_index[poset.atoms[i]] = i;
  std::ostringstream out;
  out << "digraph kunz_poset {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (Int p = 0; p < poset.size; ++p) out << "  n" << p << " [label=\"" << p << "\"];\n";
  for (const auto& c : poset.covers)
    out << "  n" << c.lower << " -> n" << c.upper << " [color=\""
        << kPalette[atom_index.at(c.atom) % 10] << "\"];\n";
  out << "}\n";
  return out.str();
}

namespace {

std::string stabilized_text(const std::optional<bool>& value) {
  return value ? (*value ? "true" : "false") : "unknown";
}

} // namespace

std::string profile_csv(const EtaProfile& profile) {
  std::ostringstream out;
  out << "m,e,eta,witness_generators,nilsemigroup_count,bound_B,stabilized\n";
  for (const auto& row : profile.rows)
    out << row.m << ',' << row.e << ',' << row.eta << ',' << join(row.witness_generators, ";")
        << ',' << row.nilsemigroup_count << ',' << row.bound << ','
        << stabilized_text(row.stabilized) << "\n";
  if (profile.truncated) out << "# truncated\n";
  return out.str();
}

nlohmann::json profile_json(const EtaProfile& profile) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : profile.rows) {
    nlohmann::json j{{"m", row.m},
                     {"e", row.e},
                     {"eta", row.eta},
                     {"witness_generators", row.witness_generators},
                     {"nilsemigroup_count", row.nilsemigroup_count},
                     {"bound_B", row.bound}};
    j["stabilized"] = row.stabilized ? nlohmann::json(*row.stabilized) : nlohmann::json(nullptr);
    rows.push_back(std::move(j));
  }
  return {{"rows", std::move(rows)}, {"truncated", profile.truncated}};
}

EtaProfile profile_from_json(const nlohmann::json& j) {
  EtaProfile profile;
  profile.truncated = j.at("truncated").get<bool>();
  for (const auto& rj : j.at("rows")) {
    ProfileRow row;
    row.m = rj.at("m").get<Int>();
    row.e = rj.at("e").get<Int>();
    row.eta = rj.at("eta").get<Int>();
    row.witness_generators = rj.at("witness_generators").get<std::vector<Int>>();
    row.nilsemigroup_count = rj.at("nilsemigroup_count").get<Int>();
    row.bound = rj.at("bound_B").get<Int>();
    if (!rj.at("stabilized").is_null()) row.stabilized = rj.at("stabilized").get<bool>();
    profile.rows.push_back(std::move(row));
  }
  return profile;
}

std::string profile_staircase(const EtaProfile& profile) {
  std::ostringstream out;
  std::map<Int, std::map<Int, std::vector<Int>>> by_m;
  std::map<Int, Int> bound_of;
  for (const auto& row : profile.rows) {
    by_m[row.m][row.e].push_back(row.eta);
    bound_of[row.m] = row.bound;
  }
  for (const auto& [m, cells] : by_m) {
    out << "m = " << m << "  (bound " << bound_of[m] << ")\n";
    for (const auto& [e, etas] : cells) {
      out << "  e = " << e << ":";
      for (Int v : etas) out << " [" << v << "]";
      out << "\n";
    }
  }
  if (profile.truncated) out << "(truncated)\n";
  return out.str();
}

namespace {

// "a..b" inclusive, or a single integer
std::vector<Int> parse_m_flags(const std::vector<std::string>& specs) {
  std::vector<Int> out;
  for (const auto& spec : specs) {
    const auto dots = spec.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoll(spec));
      } else {
        const Int lo = std::stoll(spec.substr(0, dots));
        const Int hi = std::stoll(spec.substr(dots + 2));
        if (hi < lo) throw validation_error("empty range " + spec);
        for (Int m = lo; m <= hi; ++m) out.push_back(m);
      }
    } catch (const std::invalid_argument&) {
      throw validation_error("cannot parse multiplicity '" + spec + "'");
    } catch (const std::out_of_range&) {
      throw validation_error("cannot parse multiplicity '" + spec + "'");
    }
  }
  return out;
}

void write_profile_files(const EtaProfile& profile, const std::string& path, std::ostream& out) {
  std::string base = path;
  for (const char* ext : {".csv", ".json"}) {
    const std::string suffix(ext);
    if (base.size() > suffix.size() && base.ends_with(suffix)) {
      base.resize(base.size() - suffix.size());
      break;
    }
  }
  const std::string csv_path = base + ".csv";
  const std::string json_path = base + ".json";
  std::ofstream csv(csv_path);
  if (!csv) throw validation_error("cannot open " + csv_path + " for writing");
  csv << profile_csv(profile);
  std::ofstream js(json_path);
  if (!js) throw validation_error("cannot open " + json_path + " for writing");
  js << profile_json(profile).dump(2) << "\n";
  out << "wrote " << csv_path << " and " << json_path << "\n";
}

struct SurveyFlags {
  std::vector<std::string> m_specs;
  Int bound = 0;
  Int e_filter = -1;
  Int max_eta = -1;
  std::string emit;
  bool check_stabilization = false;
  bool e4_families = false;
};

// Can one of the embedding-dimension-4 family constructors reproduce this
// achieved value?  Constructors verify their own (m, e, eta) postconditions,
// so a successful build is a positive answer.
bool e4_value_covered(Int m, Int eta_value) {
  try {
    if (eta_value == 3) {
      eta3_family(m);
    } else if (eta_value >= 4 && eta_value <= 6) {
      interval_family(4, m - 4, 6 - eta_value);
    } else if (eta_value >= 7) {
      embdim4_family(m, eta_value);
    } else {
      return false;
    }
    return true;
  } catch (const validation_error&) {
    return false;
  }
}

EtaProfile run_survey_flags(const SurveyFlags& flags, const std::atomic<bool>* cancel) {
  SurveyOptions options;
  options.bound = flags.bound;
  if (flags.e_filter >= 0) options.e_filter = flags.e_filter;
  if (flags.max_eta >= 0) options.max_eta = flags.max_eta;
  options.check_stabilization = flags.check_stabilization;
  options.cancel = cancel;
  return survey(parse_m_flags(flags.m_specs), options);
}

void add_survey_flags(CLI::App* cmd, SurveyFlags& flags) {
  cmd->add_option("--m", flags.m_specs, "multiplicities, e.g. --m 7 or --m 2..8")->required();
  cmd->add_option("--bound", flags.bound, "Kunz coordinate bound (default max(m, 8))");
  cmd->add_option("--e", flags.e_filter, "restrict to one embedding dimension");
  cmd->add_option("--max-eta", flags.max_eta, "drop rows above this eta");
  cmd->add_option("--emit", flags.emit, "write CSV and JSON profiles to this path");
  cmd->add_flag("--check-stabilization", flags.check_stabilization,
                "re-enumerate at twice the bound and stamp each row");
}

void report_e4_coverage(const EtaProfile& profile, std::ostream& out) {
  Int rows = 0;
  Int uncovered = 0;
  for (const auto& row : profile.rows) {
    if (row.e != 4) continue;
    ++rows;
    if (!e4_value_covered(row.m, row.eta)) {
      ++uncovered;
      out << "  UNCOVERED m=" << row.m << " eta=" << row.eta
          << ": no dimension-4 family constructor reproduces it\n";
    }
  }
  out << "e=4 coverage: " << rows << " achieved values, " << uncovered
      << " outside the family constructors\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* cancel) {
  CLI::App app{"numerical semigroup presentation toolkit"};
  app.name("kunzkit");
  app.require_subcommand(1);
  int exit_code = 0;

  std::vector<Int> info_gens;
  std::string info_format = "text";
  auto* info = app.add_subcommand("info", "invariants and presentations of one semigroup");
  info->add_option("generators", info_gens, "semigroup generators")->required();
  info->add_option("--format", info_format, "text | json | dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  info->callback([&] {
    InfoReport report = make_info_report(canonicalize(info_gens));
    if (info_format == "json")
      out << info_json(report).dump(2) << "\n";
    else if (info_format == "dot")
      out << poset_dot(report.poset);
    else
      out << info_text(report);
    if (!report.agreement) exit_code = 1;
  });

  std::string family_name;
  std::string family_format = "text";
  std::map<std::string, Int> family_params;
  std::vector<Int> extend_gens;
  auto* family = app.add_subcommand("family", "build a parametric family member");
  family->add_option("name", family_name,
                     "max_embdim | rosales | interval | extra_betti | eta3 | embdim4 | extend")
      ->required();
  for (const char* key : {"m", "e", "r", "s", "eta"}) {
    family_params[key] = -1;
    family->add_option(std::string("--") + key, family_params[key]);
  }
  family->add_option("--gens", extend_gens, "base generators for the extend family")
      ->delimiter(',');
  family->add_option("--format", family_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  family->callback([&] {
    FamilySpec spec;
    spec.name = family_name;
    for (const auto& [key, value] : family_params)
      if (value >= 0) spec.parameters[key] = value;
    for (std::size_t i = 0; i < extend_gens.size(); ++i)
      spec.parameters["g" + std::to_string(i)] = extend_gens[i];
    NumericalSemigroup s = build_family(spec);
    if (family_format == "json") {
      nlohmann::json j{{"family", spec.name},
                       {"generators", s.generators()},
                       {"m", spec.expected_m},
                       {"e", spec.expected_e},
                       {"eta", spec.expected_eta}};
      out << j.dump(2) << "\n";
    } else {
      out << "S = <" << join(s.generators(), ", ") << ">\n"
          << "verified: m = " << spec.expected_m << ", e = " << spec.expected_e
          << ", eta = " << spec.expected_eta << "\n";
    }
  });

  SurveyFlags survey_flags;
  auto* survey_cmd = app.add_subcommand("survey", "enumerate achieved eta values per (m, e)");
  add_survey_flags(survey_cmd, survey_flags);
  survey_cmd->callback([&] {
    EtaProfile profile = run_survey_flags(survey_flags, cancel);
    out << profile_staircase(profile);
    if (!survey_flags.emit.empty()) write_profile_files(profile, survey_flags.emit, out);
    if (profile.truncated) exit_code = 130;
  });

  SurveyFlags verify_flags;
  auto* verify_cmd = app.add_subcommand("verify", "survey and check the eta bounds on every row");
  add_survey_flags(verify_cmd, verify_flags);
  verify_cmd->add_flag("--e4-families", verify_flags.e4_families,
                       "also check that every achieved eta at e=4 comes from a family");
  verify_cmd->callback([&] {
    EtaProfile profile = run_survey_flags(verify_flags, cancel);
    BoundsReport report = verify_bounds(profile);
    out << "checked " << report.rows_checked << " rows: " << report.violations.size()
        << " violation(s)\n";
    for (const auto& v : report.violations)
      out << "  VIOLATION m=" << v.row.m << " e=" << v.row.e << " eta=" << v.row.eta << " <"
          << join(v.row.witness_generators, ",") << ">: " << v.rule << "\n";
    if (verify_flags.e4_families) report_e4_coverage(profile, out);
    if (!verify_flags.emit.empty()) write_profile_files(profile, verify_flags.emit, out);
    if (profile.truncated)
      exit_code = 130;
    else if (!report.ok())
      exit_code = 1;
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const invariant_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

} // namespace kunzkit::cli
