#pragma once

// Run configuration for the verification harness.
//
// Text grammar, one assignment per line:
//
//   # comment                      (also after a value)
//   theorems   = koshfec ramgen_odd  | all
//   moduli     = 3 4 5
//   conrey     = 2
//   z          = 0.4 -0.4 0.25+0.3i 0.1,-0.2
//   alpha      = 0.5 1 2
//   zeros      = compute | <path to zeros csv>
//   zeros_tmax = 60
//   tol        = 1e-6
//   tol.<id>   = 1e-4
//   cache_dir  = .charxi-cache
//   out        = report.json
//   format     = json | csv
//   kluyver_n  = 100000
//   threads    = 4
//
// List values are whitespace separated. Unset grids fall back to the
// per-theorem defaults of the verifier.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "charxi/identities.hpp"

namespace charxi::harness {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { json, csv };

inline constexpr double kMinRealZ = -0.9;

struct RunConfig {
  std::vector<TheoremId> theorems;
  std::vector<int> moduli;
  std::optional<int> conrey;
  std::vector<cplx> z_grid;
  std::vector<double> alpha_grid;
  std::string zeros = "compute";
  double zeros_tmax = 60.0;
  std::optional<double> tol;
  std::map<TheoremId, double> tol_by_theorem;
  std::string cache_dir;
  std::string out;
  OutputFormat format = OutputFormat::json;
  long kluyver_n = 100000;
  int threads = 1;

  bool computes_zeros() const { return zeros == "compute"; }

  std::optional<double> tolerance_for(TheoremId id) const {
    if (auto it = tol_by_theorem.find(id); it != tol_by_theorem.end()) return it->second;
    return tol;
  }

  void validate() const;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline double parse_double(std::string_view s, std::string_view what) {
  if (s.size() > 1 && s[0] == '+' && s[1] != '-') s.remove_prefix(1);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc{} || r.ptr != end) throw config_error(std::string(what) + ": not a number: '" + std::string(s) + "'");
  return v;
}

inline long parse_long(std::string_view s, std::string_view what) {
  long v = 0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc{} || r.ptr != end) throw config_error(std::string(what) + ": not an integer: '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Complex literal as "re,im", "a+bi", "a-bi", "bi" or a plain real.
inline cplx parse_complex(std::string_view s) {
  const std::string t = detail::trim(s);
  if (t.empty()) throw config_error("complex value is empty");
  if (auto c = t.find(','); c != std::string::npos)
    return {detail::parse_double(detail::trim(t.substr(0, c)), "z"), detail::parse_double(detail::trim(t.substr(c + 1)), "z")};
  if (t.back() != 'i') return {detail::parse_double(t, "z"), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [](const std::string& p) {
    if (p.empty() || p == "+") return 1.0;
    if (p == "-") return -1.0;
    return detail::parse_double(p[0] == '+' ? std::string_view(p).substr(1) : std::string_view(p), "z");
  };
  if (split == std::string::npos) return {0.0, imag_part(body)};
  return {detail::parse_double(body.substr(0, split), "z"), imag_part(body.substr(split))};
}

inline std::vector<TheoremId> parse_theorem_list(const std::vector<std::string>& names) {
  std::vector<TheoremId> out;
  for (const auto& n : names) {
    if (n == "all") {
      out.assign(kAllTheorems.begin(), kAllTheorems.end());
      continue;
    }
    const auto id = parse_theorem(n);
    if (!id) throw config_error("unknown theorem id '" + n + "'");
    if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
  }
  return out;
}

inline OutputFormat parse_format(std::string_view s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw config_error("format must be json or csv, got '" + std::string(s) + "'");
}

/// Applies one `key = value` assignment.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto toks = detail::split_ws(value);
  auto single = [&]() -> const std::string& {
    if (toks.size() != 1) throw config_error(key + ": expects exactly one value");
    return toks[0];
  };
  if (key == "theorems") {
    cfg.theorems = parse_theorem_list(toks);
  } else if (key == "moduli") {
    cfg.moduli.clear();
    for (const auto& t : toks) cfg.moduli.push_back(static_cast<int>(detail::parse_long(t, key)));
  } else if (key == "conrey") {
    cfg.conrey = static_cast<int>(detail::parse_long(single(), key));
  } else if (key == "z") {
    cfg.z_grid.clear();
    for (const auto& t : toks) cfg.z_grid.push_back(parse_complex(t));
  } else if (key == "alpha") {
    cfg.alpha_grid.clear();
    for (const auto& t : toks) cfg.alpha_grid.push_back(detail::parse_double(t, key));
  } else if (key == "zeros") {
    cfg.zeros = single();
  } else if (key == "zeros_tmax") {
    cfg.zeros_tmax = detail::parse_double(single(), key);
  } else if (key == "tol") {
    cfg.tol = detail::parse_double(single(), key);
  } else if (key.rfind("tol.", 0) == 0) {
    const auto id = parse_theorem(key.substr(4));
    if (!id) throw config_error("unknown theorem in '" + key + "'");
    cfg.tol_by_theorem[*id] = detail::parse_double(single(), key);
  } else if (key == "cache_dir") {
    cfg.cache_dir = single();
  } else if (key == "out") {
    cfg.out = single();
  } else if (key == "format") {
    cfg.format = parse_format(single());
  } else if (key == "kluyver_n") {
    cfg.kluyver_n = detail::parse_long(single(), key);
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(detail::parse_long(single(), key));
  } else {
    throw config_error("unknown key '" + key + "'");
  }
}

inline RunConfig parse_config(std::istream& in, const std::string& source = "<config>") {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw config_error(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = detail::trim(t.substr(0, eq));
    try {
      apply_setting(cfg, key, detail::trim(t.substr(eq + 1)));
    } catch (const config_error& e) {
      throw config_error(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

inline RunConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

/// Theorems tied to one parity of chi; nullopt if any parity works.
inline std::optional<Parity> required_parity(TheoremId id) {
  switch (id) {
    case TheoremId::ramgen_even:
    case TheoremId::cor_P:
    case TheoremId::rhl_even: return Parity::even;
    case TheoremId::ramgen_odd:
    case TheoremId::cor_Q:
    case TheoremId::rhl_odd: return Parity::odd;
    default: return std::nullopt;
  }
}

inline void RunConfig::validate() const {
  if (theorems.empty()) throw config_error("no theorems selected");
  for (double a : alpha_grid)
    if (!(a > 0.0) || !std::isfinite(a)) throw config_error("alpha grid must be positive, got " + std::to_string(a));
  for (cplx z : z_grid) {
    if (!(std::abs(z.real()) < 1.0)) throw config_error("z grid must satisfy |Re z| < 1");
    if (!(z.real() > kMinRealZ)) throw config_error("z grid must satisfy Re z > -0.9");
  }
  if (!(zeros_tmax > 0.0) || zeros_tmax > kZeroMaxHeight) throw config_error("zeros_tmax must lie in (0, 100]");
  if (tol && !(*tol > 0.0)) throw config_error("tol must be positive");
  for (const auto& [id, t] : tol_by_theorem)
    if (!(t > 0.0)) throw config_error("tol." + std::string(theorem_name(id)) + " must be positive");
  if (kluyver_n < 3) throw config_error("kluyver_n must be at least 3");
  if (threads < 1) throw config_error("threads must be at least 1");
  for (int q : moduli) {
    if (q < 3) throw config_error("moduli must be at least 3");
    if (enumerate_primitive(q).empty()) throw config_error("modulus " + std::to_string(q) + " has no primitive character");
  }
  if (conrey && moduli.size() != 1) throw config_error("conrey requires exactly one modulus");
  if (conrey) {
    try {
      const auto chi = conrey_character(moduli[0], *conrey);
      if (!chi.primitive || chi.is_principal()) throw config_error("character " + chi.label() + " is not primitive and non-principal");
    } catch (const precondition_error& e) {
      throw config_error(e.what());
    }
  }
  // explicit character filters must leave a compatible character for parity-bound theorems
  if (!moduli.empty()) {
    for (TheoremId id : theorems) {
      const auto p = required_parity(id);
      if (!p) continue;
      bool found = false;
      for (int q : moduli)
        for (const auto& chi : enumerate_primitive(q))
          if ((!conrey || chi.conrey_index == *conrey) && chi.parity() == *p) found = true;
      if (!found) throw config_error(std::string(theorem_name(id)) + ": no character of the required parity in the selected moduli");
    }
  }
}

}  // namespace charxi::harness
