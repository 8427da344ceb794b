#pragma once

// Zeros CSV: header `modulus,conrey_index,ordinate,lprime_re,lprime_im`, one
// zero per line, ordinates ascending within each character. Empty lprime
// fields ask the loader to recompute L'(rho).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "charxi/harness/config.hpp"
#include "charxi/lfun.hpp"

namespace charxi::harness {

inline constexpr const char* kZerosHeader = "modulus,conrey_index,ordinate,lprime_re,lprime_im";
inline constexpr double kZeroValidation = 1e-6;

class zeros_schema_error : public std::runtime_error {
 public:
  zeros_schema_error(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct RejectedZero {
  int line = 0;
  std::string message;
};

struct ZeroLoad {
  std::vector<ZeroRecord> records;
  std::vector<RejectedZero> rejected;
};

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_zeros_csv(std::ostream& out, const std::vector<ZeroRecord>& zeros) {
  out << kZerosHeader << '\n';
  for (const auto& z : zeros)
    out << z.modulus << ',' << z.conrey_index << ',' << format_g17(z.ordinate) << ',' << format_g17(z.l_prime.real()) << ','
        << format_g17(z.l_prime.imag()) << '\n';
}

/// Parses and validates a zeros CSV. Schema problems throw with the line
/// number; records that fail |L(rho)| < 1e-6 or name a non-constructible
/// character are rejected and listed, and loading continues.
inline ZeroLoad parse_zeros_csv(std::istream& in, const std::string& source = "<zeros>") {
  ZeroLoad out;
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw zeros_schema_error(source, 1, "missing header");
  ++lineno;
  if (detail::trim(line) != kZerosHeader) throw zeros_schema_error(source, lineno, "header must be '" + std::string(kZerosHeader) + "'");

  std::map<std::pair<int, int>, std::unique_ptr<LContext>> contexts;
  std::map<std::pair<int, int>, double> last_ordinate;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(t);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(detail::trim(cell));
    if (!t.empty() && t.back() == ',') f.push_back("");
    if (f.size() != 5) throw zeros_schema_error(source, lineno, "expected 5 fields, got " + std::to_string(f.size()));

    ZeroRecord r;
    try {
      r.modulus = static_cast<int>(detail::parse_long(f[0], "modulus"));
      r.conrey_index = static_cast<int>(detail::parse_long(f[1], "conrey_index"));
      r.ordinate = detail::parse_double(f[2], "ordinate");
    } catch (const config_error& e) {
      throw zeros_schema_error(source, lineno, e.what());
    }
    const bool has_lp = !f[3].empty() || !f[4].empty();
    if (has_lp && (f[3].empty() || f[4].empty())) throw zeros_schema_error(source, lineno, "lprime_re and lprime_im must both be present or both empty");
    if (has_lp) {
      try {
        r.l_prime = {detail::parse_double(f[3], "lprime_re"), detail::parse_double(f[4], "lprime_im")};
      } catch (const config_error& e) {
        throw zeros_schema_error(source, lineno, e.what());
      }
    }
    if (!(r.ordinate > 0.0) || !std::isfinite(r.ordinate)) throw zeros_schema_error(source, lineno, "ordinate must be positive");
    const auto key = std::make_pair(r.modulus, r.conrey_index);
    if (auto it = last_ordinate.find(key); it != last_ordinate.end() && !(r.ordinate > it->second))
      throw zeros_schema_error(source, lineno, "ordinates must be strictly ascending per character");
    last_ordinate[key] = r.ordinate;

    auto& ctx = contexts[key];
    if (!ctx) {
      try {
        ctx = std::make_unique<LContext>(conrey_character(r.modulus, r.conrey_index));
      } catch (const std::exception& e) {
        out.rejected.push_back({lineno, std::string("character not constructible: ") + e.what()});
        contexts.erase(key);
        continue;
      }
    }
    r.rho = {0.5, r.ordinate};
    r.source = ZeroSource::ingested;
    const double mag = std::abs(dirichlet_l(r.rho, *ctx));
    if (!(mag < kZeroValidation)) {
      out.rejected.push_back({lineno, "|L(rho)| = " + format_g17(mag) + " at ordinate " + format_g17(r.ordinate)});
      continue;
    }
    if (!has_lp) r.l_prime = l_derivative(r.rho, *ctx);
    out.records.push_back(r);
  }
  return out;
}

inline ZeroLoad load_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open zeros file '" + path + "'");
  return parse_zeros_csv(in, path);
}

/// Records of one character, in file order.
inline std::vector<ZeroRecord> zeros_for(const std::vector<ZeroRecord>& all, int q, int conrey) {
  std::vector<ZeroRecord> out;
  for (const auto& r : all)
    if (r.modulus == q && r.conrey_index == conrey) out.push_back(r);
  return out;
}

}  // namespace charxi::harness
