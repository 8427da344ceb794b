#pragma once

// On-disk cache. Zero scans dominate runtime and are read back; character
// files (values, Gauss sum, B_j) are cheap to rebuild and are written for
// inspection and checked against the live context on reuse.
//
//   <dir>/char_<q>_<conrey>.json
//   <dir>/zeros_<q>_<conrey>_<tmax>.csv
//
// Every write goes to a temporary file in the same directory and is then
// renamed over the target, so readers never observe a partial file.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "charxi/harness/zeros_io.hpp"

namespace charxi::harness {

namespace fs = std::filesystem;

inline void atomic_write(const fs::path& target, const std::string& contents) {
  static std::atomic<unsigned> counter{0};
  fs::create_directories(target.parent_path());
  std::ostringstream suffix;
  suffix << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.' << counter++;
  const fs::path tmp = target.string() + suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("cache: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

inline nlohmann::ordered_json character_json(const LContext& ctx) {
  nlohmann::ordered_json j;
  const auto& chi = ctx.chi;
  j["modulus"] = chi.modulus;
  j["conrey_index"] = chi.conrey_index;
  j["order"] = chi.order;
  j["parity"] = chi.parity_bit;
  j["values"] = nlohmann::ordered_json::array();
  for (const auto& v : chi.values) j["values"].push_back({v.real(), v.imag()});
  j["gauss"] = {ctx.gauss.real(), ctx.gauss.imag()};
  j["epsilon"] = {ctx.epsilon.real(), ctx.epsilon.imag()};
  j["bernoulli"] = nlohmann::ordered_json::array();
  for (int k = 0; k <= ctx.bernoulli.max_index(); ++k) j["bernoulli"].push_back({ctx.bernoulli[k].real(), ctx.bernoulli[k].imag()});
  return j;
}

class Cache {
 public:
  explicit Cache(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& dir() const { return dir_; }

  fs::path character_path(int q, int conrey) const { return dir_ / ("char_" + std::to_string(q) + "_" + std::to_string(conrey) + ".json"); }

  fs::path zeros_path(int q, int conrey, double t_max) const {
    return dir_ / ("zeros_" + std::to_string(q) + "_" + std::to_string(conrey) + "_" + format_g17(t_max) + ".csv");
  }

  /// Writes the character file if absent; returns false if an existing file
  /// disagrees with the context (it is then rewritten).
  bool store_character(const LContext& ctx) const {
    const fs::path p = character_path(ctx.q(), ctx.chi.conrey_index);
    const auto fresh = character_json(ctx);
    if (fs::exists(p)) {
      std::ifstream in(p);
      const auto old = nlohmann::ordered_json::parse(in, nullptr, false);
      if (!old.is_discarded() && old == fresh) return true;
      atomic_write(p, fresh.dump(1) + "\n");
      return false;
    }
    atomic_write(p, fresh.dump(1) + "\n");
    return true;
  }

  std::optional<std::vector<ZeroRecord>> load_zeros(int q, int conrey, double t_max) const {
    const fs::path p = zeros_path(q, conrey, t_max);
    if (!fs::exists(p)) return std::nullopt;
    std::ifstream in(p);
    try {
      ZeroLoad z = parse_zeros_csv(in, p.string());
      if (!z.rejected.empty()) return std::nullopt;
      for (auto& r : z.records) r.source = ZeroSource::computed;
      return z.records;
    } catch (const zeros_schema_error&) {
      return std::nullopt;
    }
  }

  void store_zeros(int q, int conrey, double t_max, const std::vector<ZeroRecord>& zeros) const {
    std::ostringstream out;
    write_zeros_csv(out, zeros);
    atomic_write(zeros_path(q, conrey, t_max), out.str());
  }

  /// Cached zeros if present, otherwise a fresh scan stored for next time.
  std::vector<ZeroRecord> zeros(const LContext& ctx, double t_max) const {
    if (auto z = load_zeros(ctx.q(), ctx.chi.conrey_index, t_max)) return *z;
    auto z = find_zeros(ctx, t_max);
    store_zeros(ctx.q(), ctx.chi.conrey_index, t_max, z);
    return z;
  }

 private:
  fs::path dir_;
};

}  // namespace charxi::harness
