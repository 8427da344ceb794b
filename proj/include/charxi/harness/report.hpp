#pragma once

// Verification report and its JSON / CSV forms.
//
// CSV columns (fixed):
//   theorem_id,variant,modulus,conrey,z_re,z_im,alpha,abs_residual,
//   rel_residual,residual_mode,tolerance,pass,error,sides,diagnostics
// `sides` is `label=re:im` joined by ';', `diagnostics` is `key=value`
// joined by ';'. Numbers use %.17g.

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "charxi/harness/config.hpp"
#include "charxi/harness/zeros_io.hpp"

namespace charxi::harness {

inline constexpr const char* kToolVersion = "charxi 1.0.0";

inline constexpr const char* kCsvHeader =
    "theorem_id,variant,modulus,conrey,z_re,z_im,alpha,abs_residual,rel_residual,residual_mode,tolerance,pass,error,sides,"
    "diagnostics";

using ojson = nlohmann::ordered_json;

struct TheoremSummary {
  int pass = 0;
  int fail = 0;
  double worst_residual = 0.0;
};

struct Report {
  std::string tool_version = kToolVersion;
  std::string generated_at;
  ojson config = ojson::object();
  std::vector<IdentityCheck> records;
  std::vector<RejectedZero> rejected_zeros;

  int passed() const {
    int n = 0;
    for (const auto& r : records) n += r.pass ? 1 : 0;
    return n;
  }
  int failed() const { return static_cast<int>(records.size()) - passed(); }
  bool all_pass() const { return failed() == 0; }

  /// Counts and worst residual per theorem, in theorem order.
  std::map<TheoremId, TheoremSummary> summary() const {
    std::map<TheoremId, TheoremSummary> s;
    for (const auto& r : records) {
      auto& t = s[r.theorem];
      (r.pass ? t.pass : t.fail) += 1;
      const double res = r.residual();
      if (!std::isfinite(res) || res > t.worst_residual) t.worst_residual = res;
    }
    return s;
  }
};

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {

inline ojson number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

inline double from_number(const ojson& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline ojson config_json(const RunConfig& cfg) {
  ojson j;
  j["theorems"] = ojson::array();
  for (auto id : cfg.theorems) j["theorems"].push_back(std::string(theorem_name(id)));
  j["moduli"] = cfg.moduli;
  j["conrey"] = cfg.conrey ? ojson(*cfg.conrey) : ojson(nullptr);
  j["z"] = ojson::array();
  for (cplx z : cfg.z_grid) j["z"].push_back({z.real(), z.imag()});
  j["alpha"] = cfg.alpha_grid;
  j["zeros"] = cfg.zeros;
  j["zeros_tmax"] = cfg.zeros_tmax;
  j["tol"] = cfg.tol ? ojson(*cfg.tol) : ojson(nullptr);
  j["tol_by_theorem"] = ojson::object();
  for (const auto& [id, t] : cfg.tol_by_theorem) j["tol_by_theorem"][std::string(theorem_name(id))] = t;
  j["kluyver_n"] = cfg.kluyver_n;
  return j;
}

inline ojson record_json(const IdentityCheck& c) {
  ojson j;
  j["theorem_id"] = std::string(theorem_name(c.theorem));
  j["variant"] = c.variant;
  j["params"] = {{"z_re", c.z.real()}, {"z_im", c.z.imag()}, {"alpha", c.alpha}, {"modulus", c.modulus}, {"conrey", c.conrey}};
  j["sides"] = ojson::array();
  for (const auto& s : c.sides) j["sides"].push_back({{"label", s.label}, {"re", detail::number(s.value.real())}, {"im", detail::number(s.value.imag())}});
  j["abs_residual"] = detail::number(c.abs_residual);
  j["rel_residual"] = detail::number(c.rel_residual);
  j["residual_mode"] = c.mode == ResidualMode::relative ? "relative" : "absolute";
  j["tolerance"] = c.tolerance;
  j["side_condition"] = c.side_condition;
  j["pass"] = c.pass;
  j["error"] = c.error;
  j["diagnostics"] = ojson::object();
  for (const auto& [k, v] : c.diagnostics) j["diagnostics"][k] = detail::number(v);
  return j;
}

inline IdentityCheck record_from_json(const ojson& j) {
  IdentityCheck c;
  const auto id = parse_theorem(j.at("theorem_id").get<std::string>());
  if (!id) throw std::runtime_error("report: unknown theorem_id " + j.at("theorem_id").get<std::string>());
  c.theorem = *id;
  c.variant = j.value("variant", "");
  const auto& p = j.at("params");
  c.z = {p.at("z_re").get<double>(), p.at("z_im").get<double>()};
  c.alpha = p.at("alpha").get<double>();
  c.modulus = p.at("modulus").get<int>();
  c.conrey = p.at("conrey").get<int>();
  for (const auto& s : j.at("sides")) c.sides.push_back({s.at("label").get<std::string>(), {detail::from_number(s.at("re")), detail::from_number(s.at("im"))}});
  c.abs_residual = detail::from_number(j.at("abs_residual"));
  c.rel_residual = detail::from_number(j.at("rel_residual"));
  c.mode = j.at("residual_mode").get<std::string>() == "relative" ? ResidualMode::relative : ResidualMode::absolute;
  c.tolerance = j.at("tolerance").get<double>();
  c.side_condition = j.value("side_condition", true);
  c.pass = j.at("pass").get<bool>();
  c.error = j.value("error", "");
  for (const auto& [k, v] : j.at("diagnostics").items()) c.diag(k, detail::from_number(v));
  return c;
}

inline ojson report_json(const Report& r) {
  ojson j;
  j["tool_version"] = r.tool_version;
  j["generated_at"] = r.generated_at;
  j["config"] = r.config;
  j["records"] = ojson::array();
  for (const auto& c : r.records) j["records"].push_back(record_json(c));
  ojson s;
  s["total"] = r.records.size();
  s["pass"] = r.passed();
  s["fail"] = r.failed();
  s["by_theorem"] = ojson::object();
  for (const auto& [id, t] : r.summary())
    s["by_theorem"][std::string(theorem_name(id))] = {{"pass", t.pass}, {"fail", t.fail}, {"worst_residual", detail::number(t.worst_residual)}};
  j["summary"] = s;
  j["rejected_zeros"] = ojson::array();
  for (const auto& z : r.rejected_zeros) j["rejected_zeros"].push_back({{"line", z.line}, {"message", z.message}});
  return j;
}

inline Report report_from_json(const ojson& j) {
  Report r;
  r.tool_version = j.value("tool_version", "");
  r.generated_at = j.value("generated_at", "");
  r.config = j.value("config", ojson::object());
  for (const auto& rec : j.at("records")) r.records.push_back(record_from_json(rec));
  if (j.contains("rejected_zeros"))
    for (const auto& z : j["rejected_zeros"]) r.rejected_zeros.push_back({z.at("line").get<int>(), z.at("message").get<std::string>()});
  return r;
}

inline std::string emit_json(const Report& r) { return report_json(r).dump(2) + "\n"; }

inline std::string emit_csv(const Report& r) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& c : r.records) {
    std::string sides, diags;
    for (const auto& s : c.sides) {
      if (!sides.empty()) sides += ';';
      sides += s.label + "=" + format_g17(s.value.real()) + ":" + format_g17(s.value.imag());
    }
    for (const auto& [k, v] : c.diagnostics) {
      if (!diags.empty()) diags += ';';
      diags += k + "=" + format_g17(v);
    }
    out << theorem_name(c.theorem) << ',' << detail::csv_quote(c.variant) << ',' << c.modulus << ',' << c.conrey << ','
        << format_g17(c.z.real()) << ',' << format_g17(c.z.imag()) << ',' << format_g17(c.alpha) << ',' << format_g17(c.abs_residual)
        << ',' << format_g17(c.rel_residual) << ',' << (c.mode == ResidualMode::relative ? "relative" : "absolute") << ','
        << format_g17(c.tolerance) << ',' << (c.pass ? 1 : 0) << ',' << detail::csv_quote(c.error) << ',' << detail::csv_quote(sides)
        << ',' << detail::csv_quote(diags) << '\n';
  }
  return out.str();
}

inline std::string emit_report(const Report& r, OutputFormat f) { return f == OutputFormat::json ? emit_json(r) : emit_csv(r); }

/// Fixed-width pass/fail table, one row per theorem plus a total.
inline std::string summary_table(const Report& r) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %6s %6s %14s\n", "theorem", "pass", "fail", "worst_resid");
  out << buf;
  for (const auto& [id, t] : r.summary()) {
    std::snprintf(buf, sizeof buf, "%-14s %6d %6d %14.3e\n", std::string(theorem_name(id)).c_str(), t.pass, t.fail, t.worst_residual);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "%-14s %6d %6d\n", "total", r.passed(), r.failed());
  out << buf;
  return out.str();
}

}  // namespace charxi::harness
