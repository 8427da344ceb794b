// Acceptance suite: one line per criterion, exit status 0 iff all pass.
//
//   acceptance [--only N]... [--verbose]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "charxi/harness/verify.hpp"

using namespace charxi;
using namespace charxi::harness;

namespace {

bool g_verbose = false;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

void dump_failures(const Report& r) {
  if (!g_verbose) return;
  for (const auto& c : r.records)
    if (!c.pass)
      std::fprintf(stderr, "    fail %s %d.%d z=(%g,%g) alpha=%g %s residual=%.3e tol=%.1e %s\n", std::string(theorem_name(c.theorem)).c_str(),
                   c.modulus, c.conrey, c.z.real(), c.z.imag(), c.alpha, c.variant.c_str(), c.residual(), c.tolerance, c.error.c_str());
}

// Records pass and share the residual bound; detail lists count and worst residual.
Outcome all_records_pass(const Report& r, const std::string& label) {
  dump_failures(r);
  double worst = 0.0;
  for (const auto& c : r.records) worst = std::max(worst, c.residual());
  std::ostringstream d;
  d << label << ": " << r.passed() << "/" << r.records.size() << " records, worst residual " << sci(worst);
  return {!r.records.empty() && r.all_pass(), d.str()};
}

RunConfig config_for(std::vector<TheoremId> ids) {
  RunConfig cfg;
  cfg.theorems = std::move(ids);
  cfg.threads = 4;
  return cfg;
}

// Winding number of L(.,chi) around [x0,x1] x [y0,y1] with adaptive steps
// keeping each arg increment below pi/8.
int argument_principle_count(const LContext& ctx, double x0, double x1, double y0, double y1) {
  const cplx corners[] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}};
  double winding = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e];
    const cplx b = corners[e + 1];
    double u = 0.0;
    cplx prev = dirichlet_l(a, ctx);
    double h = 0.01;
    while (u < 1.0) {
      const double u1 = std::min(1.0, u + h);
      const cplx cur = dirichlet_l(a + (b - a) * u1, ctx);
      const double d = std::arg(cur / prev);
      if (std::abs(d) > std::numbers::pi / 8.0 && h > 1e-9) {
        h *= 0.5;
        continue;
      }
      winding += d;
      prev = cur;
      u = u1;
      h = std::min(0.02, 2.0 * h);
    }
  }
  return static_cast<int>(std::lround(winding / (2.0 * std::numbers::pi)));
}

Outcome functional_equation() {
  double worst = 0.0;
  int chars = 0;
  for (int q : {3, 4, 5, 7, 8, 11})
    for (const auto& chi : enumerate_primitive(q)) {
      LContext ctx(chi);
      LContext bar = ctx.conjugate_context();
      ++chars;
      for (double sigma : {-0.4, 0.1, 0.5, 0.9, 1.4})
        for (double t : {0.0, 3.0, -3.0, 11.0, -11.0, 25.0, -25.0}) {
          const cplx s(sigma, t);
          const cplx x = xi_completed(s, ctx);
          worst = std::max(worst, std::abs(xi_completed(1.0 - s, bar) - ctx.epsilon * x) / (1.0 + std::abs(x)));
        }
    }
  return {worst < 1e-8, std::to_string(chars) + " characters, worst normalized residual " + sci(worst)};
}

Outcome koshfec() {
  RunConfig cfg = config_for({TheoremId::koshfec});
  cfg.moduli = {3, 4, 5};
  cfg.z_grid = {0.0, 1e-6, -1e-6, 0.4, -0.4, cplx(0.25, 0.3)};
  cfg.alpha_grid = {0.5, 1.0, 2.0};
  const Report r = run_verification(cfg);
  Outcome o = all_records_pass(r, "four-fold + integral");
  double gap = 0.0;
  for (const auto& c : r.records)
    if (auto g = c.diagnostic("limit_gap")) gap = std::max(gap, *g);
  o.pass = o.pass && gap < 1e-5;
  o.detail += ", z->0 gap " + sci(gap);
  return o;
}

Outcome ramanujan() {
  RunConfig cfg = config_for({TheoremId::ramgen_even, TheoremId::ramgen_odd});
  cfg.z_grid = {0.4, -0.4};
  cfg.alpha_grid = {1.5};
  const Report r = run_verification(cfg);
  std::set<int> moduli;
  for (const auto& c : r.records) moduli.insert(c.modulus);
  Outcome o = all_records_pass(r, "two lines + kernel integral");
  o.pass = o.pass && moduli == std::set<int>{3, 5};
  return o;
}

Outcome corollaries() {
  RunConfig cfg = config_for({TheoremId::cor_P, TheoremId::cor_Q, TheoremId::rim});
  cfg.moduli = {3, 4, 5};
  cfg.alpha_grid = {0.5, 1.0, 2.0};
  return all_records_pass(run_verification(cfg), "P/Q four-fold + integral, F realness");
}

Outcome lemmas_4() {
  RunConfig lines = config_for({TheoremId::lemma_41, TheoremId::lemma_42});
  lines.moduli = {3, 5};
  lines.z_grid = {0.5};
  lines.alpha_grid = {0.3, 0.7, 1.3, 1.7};
  const Report a = run_verification(lines);
  RunConfig asym = config_for({TheoremId::lemma_43, TheoremId::lemma_44});
  asym.moduli = {3, 5};
  asym.z_grid = {0.5};
  asym.alpha_grid = {40.0, 50.0};
  const Report b = run_verification(asym);
  const Outcome oa = all_records_pass(a, "vertical-line lemmas");
  const Outcome ob = all_records_pass(b, "large-alpha asymptotics err/omitted");
  return {oa.pass && ob.pass, oa.detail + "; " + ob.detail};
}

Outcome mellin_bessel() {
  double worst = 0.0;
  for (auto [nu, x] : {std::pair{cplx(0.0, 0.0), 1.0}, std::pair{cplx(0.3, 0.0), 2.0}, std::pair{cplx(0.45, 0.2), 1.5}}) {
    const auto r = vertical_line_integral(bessmel_integrand(nu, 2.0, x / 2.0), 1.5);
    worst = std::max(worst, std::abs(r.value - bessel_k(nu, x)));
  }
  return {worst < 1e-8, "3 (nu,x) pairs, worst residual " + sci(worst)};
}

Outcome lprod() {
  Report r;
  for (auto [q, n] : {std::pair{5, 2}, std::pair{4, 3}})
    for (cplx eta : {cplx(-0.7, 0.0), cplx(0.3, 0.0)}) r.records.push_back(check_lprod(LContext(conrey_character(q, n)), eta, 200));
  return all_records_pass(r, "n <= 200, 2 eta x 2 characters");
}

Outcome mobius_kluyver_zeros() {
  RunConfig exact = config_for({TheoremId::fabyz, TheoremId::kluyver});
  exact.kluyver_n = 100000;
  const Report a = run_verification(exact);
  std::set<std::string> ks;
  for (const auto& c : a.records)
    if (c.theorem == TheoremId::fabyz) ks.insert(c.variant);
  const Outcome oa = all_records_pass(a, "fabyz + kluyver");

  RunConfig rhl = config_for({TheoremId::rhl_odd, TheoremId::rhl_even});
  rhl.zeros_tmax = 60.0;
  const Report b = run_verification(rhl);
  dump_failures(b);
  int shrinking = 0, within = 0;
  double worst = 0.0;
  std::string broken;
  for (const auto& c : b.records) {
    if (c.side_condition && c.error.empty()) {
      ++shrinking;
    } else {
      broken += " " + std::to_string(c.modulus) + "." + std::to_string(c.conrey) + "@" + format_g17(c.alpha);
    }
    if (c.abs_residual < 1e-3) ++within;
    worst = std::max(worst, c.abs_residual);
  }
  const int n = static_cast<int>(b.records.size());
  std::ostringstream d;
  d << oa.detail << "; rhl: " << within << "/" << n << " below 1e-3 (worst " << sci(worst) << "), " << shrinking << "/" << n
    << " with shrinking last brackets";
  if (!broken.empty()) d << " [not shrinking:" << broken << "]";
  return {oa.pass && ks == std::set<std::string>{"k=2", "k=3"} && n > 0 && shrinking == n, d.str()};
}

Outcome zero_finder() {
  LContext ctx(conrey_character(3, 2));
  const auto zeros = find_zeros(ctx, 10.0);
  const int count = argument_principle_count(ctx, -0.5, 1.5, 0.0, 10.0);
  double worst = 0.0;
  for (const auto& z : find_zeros(ctx, 60.0)) worst = std::max(worst, std::abs(dirichlet_l(z.rho, ctx)));
  std::ostringstream d;
  d << "scan " << zeros.size() << " vs contour " << count << " on (0,10], max |L(rho)| " << sci(worst) << " to height 60";
  return {static_cast<int>(zeros.size()) == count && worst < 1e-8, d.str()};
}

Outcome determinism() {
  RunConfig cfg = config_for({TheoremId::koshfec, TheoremId::ramgen_odd, TheoremId::rhl_even, TheoremId::kluyver, TheoremId::gfica_equiv});
  cfg.moduli = {5};
  cfg.z_grid = {0.4};
  cfg.alpha_grid = {1.3};
  cfg.kluyver_n = 20000;
  auto body = [](const Report& r) {
    ojson j = report_json(r);
    j.erase("generated_at");
    return j.dump();
  };
  const Report a = run_verification(cfg);
  const Report b = run_verification(cfg);
  cfg.threads = 1;
  const Report c = run_verification(cfg);
  const bool same = body(a) == body(b) && body(a) == body(c);
  return {same && !a.records.empty(), std::to_string(a.records.size()) + " records, repeated and single-threaded runs " + (same ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--verbose")) {
      g_verbose = true;
    } else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      only.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--only N]... [--verbose]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "functional equation suite", 30, functional_equation},
      {2, "Bessel-series four-fold transformation", 300, koshfec},
      {3, "Hurwitz-series formulas with Gamma kernels", 600, ramanujan},
      {4, "P/Q corollaries and realness of F", 300, corollaries},
      {5, "vertical-line lemmas and asymptotics", 120, lemmas_4},
      {6, "Mellin-Bessel pair", 60, mellin_bessel},
      {7, "coefficient identity for L L", 10, lprod},
      {8, "Moebius, Kluyver and zero-sum identities", 900, mobius_kluyver_zeros},
      {9, "zero finder", 120, zero_finder},
      {10, "determinism", 600, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt < c.budget_s;
    const bool ok = o.pass && in_time;
    if (!ok) ++failed;
    std::printf("[%s] %2d %-42s %7.2fs/%4.0fs  %s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, dt, c.budget_s, o.detail.c_str(),
                in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
