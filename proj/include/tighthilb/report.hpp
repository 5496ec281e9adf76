#pragma once

#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tighthilb/analyzer.hpp"

namespace tighthilb {

inline constexpr const char* kReportSchema = "tight-hilbert/1";

using Json = nlohmann::ordered_json;

inline Json polys_to_json(std::span<const Polynomial> polys) {
  Json out = Json::array();
  for (const auto& f : polys) out.push_back(format(f));
  return out;
}

inline Json ring_to_json(const std::string& name, const PresentedRing& ring) {
  return {{"name", name},
          {"characteristic", ring.characteristic()},
          {"variables", ring.ambient()->names()},
          {"relations", polys_to_json(ring.defining_ideal().generators())},
          {"dimension", ring.dimension()}};
}

inline Json test_element_to_json(const TestElement& c) {
  return {{"c", format(c.c)}, {"provenance", c.provenance}};
}

inline Json closure_to_json(int n, const ClosureResult& c) {
  return {{"n", n},
          {"generators", polys_to_json(c.closure.gb().generators())},
          {"e_max", c.e_max},
          {"stabilized_at", c.stabilized_at ? Json(*c.stabilized_at) : Json(nullptr)},
          {"status", to_string(c.status)},
          {"kernel_dims", c.kernel_dims},
          {"ideal_verified", c.ideal_verified},
          {"test_element", test_element_to_json(c.test_element)}};
}

inline Json table_to_json(const HilbertTable& t) {
  Json values = Json::array();
  for (int n = 1; n <= t.depth(); ++n) {
    Json row = {{"n", n}, {"length", t.at(n)}};
    if (t.kind == TableKind::Tight) row["status"] = to_string(t.closures[static_cast<std::size_t>(n - 1)].status);
    values.push_back(row);
  }
  Json out = {{"kind", to_string(t.kind)}, {"dimension", t.d}, {"values", values}};
  if (t.fitted) {
    out["fitted"] = {{"coefficients", t.fitted->e}, {"window", {t.fitted->n_lo, t.fitted->n_hi}}};
  } else {
    out["fitted"] = nullptr;
    out["fit_error"] = t.fit_error;
  }
  if (t.kind == TableKind::Tight) {
    Json closures = Json::array();
    for (int n = 1; n <= t.depth(); ++n) closures.push_back(closure_to_json(n, t.closures[static_cast<std::size_t>(n - 1)]));
    out["closures"] = closures;
  }
  return out;
}

inline const char* overall_status(const AnalysisReport& r) {
  if (r.any_fail()) return "FAIL";
  if (r.inconclusive()) return "INCONCLUSIVE";
  return "PASS";
}

inline int exit_code(const AnalysisReport& r) {
  if (r.any_fail()) return 2;
  if (r.inconclusive()) return 3;
  return 0;
}

inline Json analysis_to_json(const AnalysisReport& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    Json j = {{"id", v.id}, {"outcome", to_string(v.outcome)}, {"witness", v.witness}, {"assumptions", v.assumptions}};
    if (!v.note.empty()) j["note"] = v.note;
    verdicts.push_back(j);
  }
  Json cohomology = nullptr;
  if (r.profile) {
    cohomology = {{"h", r.profile->h}, {"zero_star_length", r.profile->zero_star}, {"contradicted", r.profile->contradicted}};
    if (r.profile->contradicted) cohomology["reason"] = r.profile->reason;
  }
  Json out = {
      {"ideal", r.ideal_name},
      {"ring", r.ring_name},
      {"generators", polys_to_json(r.q.generators())},
      {"dimension", r.d},
      {"config",
       {{"depth", r.ordinary.depth()}, {"e_max", r.e_max}, {"window", r.window},
        {"test_element", test_element_to_json(r.test_element)}}},
      {"assumptions",
       {{"standard_sop", r.assumptions.standard_sop},
        {"test_element_generators", r.assumptions.test_element_generators},
        {"ass_primes", r.assumptions.ass_prime_names}}},
      {"lengths", {{"R_mod_Q", r.len_q}, {"R_mod_Q_star", r.len_q_star}}},
      {"coefficients",
       {{"e", r.ordinary.fitted ? Json(r.ordinary.fitted->e) : Json(nullptr)},
        {"e_star", r.tight.fitted ? Json(r.tight.fitted->e) : Json(nullptr)}}},
      {"cohomology", cohomology},
      {"frationality", {{"verdict", to_string(r.frationality.verdict)}, {"reasons", r.frationality.reasons}}},
      {"verdicts", verdicts},
      {"status", overall_status(r)},
      {"ordinary", table_to_json(r.ordinary)},
      {"tight", table_to_json(r.tight)},
  };
  if (!r.extension_name.empty()) out["extension"] = r.extension_name;
  return out;
}

inline std::string table_to_csv(const HilbertTable& t) {
  std::string out = "n,length,status\n";
  for (int n = 1; n <= t.depth(); ++n) {
    std::string status = t.kind == TableKind::Tight ? to_string(t.closures[static_cast<std::size_t>(n - 1)].status) : "EXACT";
    out += std::to_string(n) + "," + std::to_string(t.at(n)) + "," + status + "\n";
  }
  return out;
}

inline std::string join(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + ")";
}

inline std::string analysis_to_text(const AnalysisReport& r) {
  std::ostringstream os;
  std::string gens;
  for (const auto& g : r.q.generators()) gens += (gens.empty() ? "" : ", ") + format(g);
  os << "ideal " << r.ideal_name << " = (" << gens << ") in " << r.ring_name << " (d = " << r.d
     << ", p = " << r.q.ring()->characteristic() << ")\n";
  os << "  test element c = " << format(r.test_element.c) << " [" << r.test_element.provenance << "], e_max = " << r.e_max
     << ", window = " << r.window << "\n";
  os << "  " << std::setw(4) << "n" << std::setw(12) << "l(R/Q^n)" << std::setw(14) << "l(R/(Q^n)*)"
     << "  status\n";
  for (int n = 1; n <= r.ordinary.depth(); ++n) {
    os << "  " << std::setw(4) << n << std::setw(12) << r.ordinary.at(n) << std::setw(14) << r.tight.at(n) << "  "
       << to_string(r.tight.closures[static_cast<std::size_t>(n - 1)].status) << "\n";
  }
  os << "  e  = " << (r.ordinary.fitted ? join(r.ordinary.fitted->e) : "withheld (" + r.ordinary.fit_error + ")") << "\n";
  os << "  e* = " << (r.tight.fitted ? join(r.tight.fitted->e) : "withheld (" + r.tight.fit_error + ")") << "\n";
  if (r.profile) {
    os << "  h = " << join(r.profile->h) << ", l(0*) = " << r.profile->zero_star
       << (r.profile->contradicted ? "  CONTRADICTED: " + r.profile->reason : "") << "\n";
  }
  for (const auto& v : r.verdicts) {
    os << "  " << std::left << std::setw(28) << v.id << std::right << to_string(v.outcome);
    if (!v.note.empty()) os << "  (" << v.note << ")";
    os << "\n";
  }
  os << "  verdict: " << to_string(r.frationality.verdict) << "\n";
  return os.str();
}

}  // namespace tighthilb
