#pragma once

// Expands a RunConfig into identity checks, evaluates them (optionally on a
// worker pool) and assembles a Report in deterministic order.

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <thread>
#include <tuple>
#include <vector>

#include "charxi/harness/cache.hpp"
#include "charxi/harness/config.hpp"
#include "charxi/harness/report.hpp"
#include "charxi/harness/zeros_io.hpp"

namespace charxi::harness {

/// Parameter grid used when the config leaves a field unset.
struct TheoremGrid {
  std::vector<int> moduli;
  std::vector<cplx> z;       // empty: theorem has no z parameter
  std::vector<double> alpha; // empty: theorem has no alpha parameter
};

inline TheoremGrid default_grid(TheoremId id) {
  const std::vector<int> small{3, 4, 5};
  const std::vector<double> unit_alphas{0.5, 1.0, 2.0};
  switch (id) {
    case TheoremId::koshfec:
      return {small, {0.0, 1e-6, -1e-6, 0.4, -0.4, cplx(0.25, 0.3)}, unit_alphas};
    case TheoremId::ramgen_even: return {{5}, {0.4, -0.4}, {1.5}};
    case TheoremId::ramgen_odd: return {{3}, {0.4, -0.4}, {1.5}};
    case TheoremId::cor_P:
    case TheoremId::cor_Q:
    case TheoremId::rim: return {small, {}, unit_alphas};
    case TheoremId::rhl_odd:
    case TheoremId::rhl_even: return {small, {}, {1.0, 1.3, 2.0}};
    case TheoremId::lemma_lprod: return {{3, 5}, {-0.7, 0.3}, {}};
    case TheoremId::lemma_41: return {{3, 5}, {}, {0.3, 0.7, 1.3, 1.7}};
    case TheoremId::lemma_42: return {{3, 5}, {0.5}, {0.3, 0.7, 1.3, 1.7}};
    case TheoremId::lemma_43: return {{3, 5}, {}, {40.0, 50.0}};
    case TheoremId::lemma_44: return {{3, 5}, {0.5}, {40.0, 50.0}};
    case TheoremId::kluyver: return {{3}, {}, {}};
    case TheoremId::fabyz: return {small, {}, {}};
    case TheoremId::gfica_equiv: return {{5}, {0.4}, {1.5}};
  }
  return {};
}

struct Job {
  TheoremId theorem = TheoremId::koshfec;
  int q = 0;
  int conrey = 0;
  cplx z{0.0, 0.0};
  double alpha = 0.0;
  std::optional<KernelTag> kernel;
};

namespace detail {

inline auto job_key(const Job& j) {
  return std::make_tuple(static_cast<int>(j.theorem), j.q, j.conrey, j.z.real(), j.z.imag(), j.alpha,
                         j.kernel ? static_cast<int>(*j.kernel) : -1);
}

}  // namespace detail

/// Jobs in report order: theorem, q, conrey, z, alpha, kernel.
inline std::vector<Job> plan_jobs(const RunConfig& cfg) {
  std::vector<Job> jobs;
  for (TheoremId id : cfg.theorems) {
    const TheoremGrid g = default_grid(id);
    const auto& moduli = cfg.moduli.empty() ? g.moduli : cfg.moduli;
    std::vector<cplx> zs = g.z.empty() ? std::vector<cplx>{0.0} : (cfg.z_grid.empty() ? g.z : cfg.z_grid);
    std::vector<double> as = g.alpha.empty() ? std::vector<double>{0.0} : (cfg.alpha_grid.empty() ? g.alpha : cfg.alpha_grid);
    const auto parity = required_parity(id);
    for (int q : moduli)
      for (const auto& chi : enumerate_primitive(q)) {
        if (cfg.conrey && chi.conrey_index != *cfg.conrey) continue;
        if (parity && chi.parity() != *parity) continue;
        for (cplx z : zs)
          for (double a : as) {
            if (id == TheoremId::gfica_equiv) {
              for (KernelTag k : {KernelTag::unit, KernelTag::omega, KernelTag::lambda}) jobs.push_back({id, q, chi.conrey_index, z, a, k});
            } else {
              jobs.push_back({id, q, chi.conrey_index, z, a, std::nullopt});
            }
          }
      }
  }
  std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return detail::job_key(a) < detail::job_key(b); });
  jobs.erase(std::unique(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return detail::job_key(a) == detail::job_key(b); }),
             jobs.end());
  return jobs;
}

/// Zero records keyed by (q, conrey).
using ZeroTable = std::map<std::pair<int, int>, std::vector<ZeroRecord>>;

inline IdentityCheck run_job(const Job& j, const LContext& ctx, const RunConfig& cfg, const ZeroTable& zeros) {
  const auto tol = cfg.tolerance_for(j.theorem);
  switch (j.theorem) {
    case TheoremId::koshfec: return check_koshfec(ctx, j.z, j.alpha, tol);
    case TheoremId::ramgen_even:
    case TheoremId::ramgen_odd: return check_ramgen(ctx, j.z, j.alpha, tol);
    case TheoremId::cor_P:
    case TheoremId::cor_Q: return check_cor(ctx, j.alpha, tol);
    case TheoremId::rim: return check_rim(ctx, j.alpha, tol);
    case TheoremId::rhl_odd:
    case TheoremId::rhl_even: {
      const auto a = zeros.find({j.q, j.conrey});
      const auto b = zeros.find({j.q, ctx.chibar.conrey_index});
      if (a == zeros.end() || b == zeros.end() || a->second.empty() || b->second.empty()) {
        IdentityCheck c = charxi::detail::make_check(j.theorem, ctx, 0.0, j.alpha, tol);
        c.error = "no zeros available for " + ctx.chi.label() + " or its conjugate";
        c.finalize();
        return c;
      }
      return check_rhl(ctx, j.alpha, a->second, b->second, tol);
    }
    case TheoremId::lemma_lprod: return check_lprod(ctx, j.z, 200, tol);
    case TheoremId::lemma_41: return check_lemma41(ctx, j.alpha, tol);
    case TheoremId::lemma_42: return check_lemma42(ctx, j.z, j.alpha, tol);
    case TheoremId::lemma_43: return check_lemma43(ctx, j.alpha, tol);
    case TheoremId::lemma_44: return check_lemma44(ctx, j.z, j.alpha, tol);
    case TheoremId::kluyver: return check_kluyver(ctx, cfg.kluyver_n, tol);
    case TheoremId::fabyz: return check_fabyz(ctx, tol);
    case TheoremId::gfica_equiv: return check_gfica(ctx, *j.kernel, j.z, j.alpha, tol);
  }
  throw precondition_error("run_job: unknown theorem");
}

/// Evaluates every check selected by cfg. Configuration problems throw
/// config_error before any evaluation; failing checks are recorded.
inline Report run_verification(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.computes_zeros() && !fs::exists(cfg.zeros)) throw config_error("zeros file '" + cfg.zeros + "' does not exist");
  const std::vector<Job> jobs = plan_jobs(cfg);

  Report report;
  report.generated_at = utc_timestamp();
  report.config = config_json(cfg);

  std::optional<Cache> cache;
  if (!cfg.cache_dir.empty()) cache.emplace(cfg.cache_dir);

  std::map<std::pair<int, int>, std::unique_ptr<LContext>> contexts;
  std::set<std::pair<int, int>> need_zeros;
  for (const auto& j : jobs) {
    auto& ctx = contexts[{j.q, j.conrey}];
    if (!ctx) ctx = std::make_unique<LContext>(conrey_character(j.q, j.conrey));
    if (j.theorem == TheoremId::rhl_odd || j.theorem == TheoremId::rhl_even) {
      need_zeros.insert({j.q, j.conrey});
      need_zeros.insert({j.q, ctx->chibar.conrey_index});
    }
  }
  if (cache)
    for (const auto& [key, ctx] : contexts) cache->store_character(*ctx);

  ZeroTable zeros;
  if (!need_zeros.empty()) {
    if (cfg.computes_zeros()) {
      for (const auto& key : need_zeros) {
        LContext ctx(conrey_character(key.first, key.second));
        zeros[key] = cache ? cache->zeros(ctx, cfg.zeros_tmax) : find_zeros(ctx, cfg.zeros_tmax);
      }
    } else {
      ZeroLoad loaded = load_zeros(cfg.zeros);
      report.rejected_zeros = loaded.rejected;
      for (const auto& key : need_zeros) zeros[key] = zeros_for(loaded.records, key.first, key.second);
    }
  }

  report.records.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      const Job& j = jobs[i];
      report.records[i] = run_job(j, *contexts.at({j.q, j.conrey}), cfg, zeros);
    }
  };
  const int n_threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(jobs.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return report;
}

}  // namespace charxi::harness
