// charxi: characters, L-values, zeros and identity verification.
//
// Exit status: 0 success (all checks pass), 1 some check failed or a
// runtime error, 2 configuration or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "charxi/harness/verify.hpp"

using namespace charxi;
using namespace charxi::harness;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw config_error("cannot open output file '" + path + "'");
  out << text;
}

int cmd_chars(int q, bool as_json) {
  const auto chars = enumerate_primitive(q);
  if (as_json) {
    ojson arr = ojson::array();
    for (const auto& chi : chars) {
      const cplx g = gauss_sum(chi);
      arr.push_back({{"label", chi.label()}, {"conrey", chi.conrey_index}, {"order", chi.order}, {"parity", chi.is_even() ? "even" : "odd"},
                     {"gauss_re", g.real()}, {"gauss_im", g.imag()}});
    }
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  std::printf("%-8s %6s %6s %22s %22s\n", "label", "order", "parity", "gauss_re", "gauss_im");
  for (const auto& chi : chars) {
    const cplx g = gauss_sum(chi);
    std::printf("%-8s %6d %6s %22.15g %22.15g\n", chi.label().c_str(), chi.order, chi.is_even() ? "even" : "odd", g.real(), g.imag());
  }
  return 0;
}

int cmd_lvalue(int q, int conrey, const std::string& s_text) {
  const cplx s = parse_complex(s_text);
  LContext ctx(conrey_character(q, conrey));
  const cplx v = dirichlet_l(s, ctx);
  std::printf("%s %s %s\n", ctx.chi.label().c_str(), format_g17(v.real()).c_str(), format_g17(v.imag()).c_str());
  return 0;
}

int cmd_zeros(int q, int conrey, double tmax, const std::string& out) {
  if (!(tmax > 0.0) || tmax > kZeroMaxHeight) throw config_error("--tmax must lie in (0, 100]");
  LContext ctx(conrey_character(q, conrey));
  std::ostringstream csv;
  write_zeros_csv(csv, find_zeros(ctx, tmax));
  write_output(out, csv.str());
  return 0;
}

struct VerifyArgs {
  std::string config;
  std::vector<std::string> theorems;
  std::optional<int> q;
  std::optional<int> conrey;
  std::vector<std::string> z;
  std::vector<double> alpha;
  std::string zeros;
  std::optional<double> tol;
  std::string out;
  std::string format;
  std::string cache;
  std::optional<int> threads;
  bool quiet = false;
};

int cmd_verify(const VerifyArgs& a) {
  RunConfig cfg = a.config.empty() ? RunConfig{} : load_config(a.config);
  if (!a.theorems.empty()) cfg.theorems = parse_theorem_list(a.theorems);
  if (a.q) cfg.moduli = {*a.q};
  if (a.conrey) cfg.conrey = *a.conrey;
  if (!a.z.empty()) {
    cfg.z_grid.clear();
    for (const auto& t : a.z) cfg.z_grid.push_back(parse_complex(t));
  }
  if (!a.alpha.empty()) cfg.alpha_grid = a.alpha;
  if (!a.zeros.empty()) cfg.zeros = a.zeros;
  if (a.tol) cfg.tol = *a.tol;
  if (!a.out.empty()) cfg.out = a.out;
  if (!a.format.empty()) cfg.format = parse_format(a.format);
  if (!a.cache.empty()) cfg.cache_dir = a.cache;
  if (a.threads) cfg.threads = *a.threads;

  const Report r = run_verification(cfg);
  const std::string doc = emit_report(r, cfg.format);
  if (cfg.out.empty()) {
    std::cout << doc;
  } else {
    write_output(cfg.out, doc);
  }
  if (!a.quiet) std::cerr << summary_table(r);
  for (const auto& z : r.rejected_zeros) std::cerr << "rejected zero (line " << z.line << "): " << z.message << "\n";
  return r.all_pass() ? 0 : kExitFail;
}

int cmd_report(const std::string& in_path, bool summary) {
  std::ifstream in(in_path);
  if (!in) throw config_error("cannot open report '" + in_path + "'");
  const auto j = ojson::parse(in, nullptr, false);
  if (j.is_discarded()) throw config_error("report '" + in_path + "' is not valid JSON");
  const Report r = report_from_json(j);
  if (summary) {
    std::cout << summary_table(r);
  } else {
    for (const auto& c : r.records) {
      std::printf("%-12s %4d.%-3d z=%-22s alpha=%-8g %-14s %s residual=%.3e tol=%.1e%s%s\n", std::string(theorem_name(c.theorem)).c_str(),
                  c.modulus, c.conrey, (format_g17(c.z.real()) + "," + format_g17(c.z.imag())).c_str(), c.alpha, c.variant.c_str(),
                  c.pass ? "PASS" : "FAIL", c.residual(), c.tolerance, c.error.empty() ? "" : " error=", c.error.c_str());
    }
  }
  return r.all_pass() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet-character L-function toolkit and identity verifier"};
  app.require_subcommand(1);

  int chars_q = 0;
  bool chars_json = false;
  auto* chars = app.add_subcommand("chars", "list primitive characters mod q");
  chars->add_option("--q", chars_q, "modulus")->required();
  chars->add_flag("--json", chars_json, "emit JSON");

  int lv_q = 0, lv_n = 0;
  std::string lv_s;
  auto* lvalue = app.add_subcommand("lvalue", "evaluate L(s, chi)");
  lvalue->add_option("--q", lv_q, "modulus")->required();
  lvalue->add_option("--conrey", lv_n, "Conrey index")->required();
  lvalue->add_option("--s", lv_s, "point as re,im or a+bi")->required();

  int z_q = 0, z_n = 0;
  double z_tmax = 0.0;
  std::string z_out;
  auto* zeros = app.add_subcommand("zeros", "critical-line zeros up to height tmax as CSV");
  zeros->add_option("--q", z_q, "modulus")->required();
  zeros->add_option("--conrey", z_n, "Conrey index")->required();
  zeros->add_option("--tmax", z_tmax, "height, at most 100")->required();
  zeros->add_option("--out", z_out, "output file (default stdout)");

  VerifyArgs va;
  int va_q = 0, va_conrey = 0, va_threads = 0;
  double va_tol = 0.0;
  auto* verify = app.add_subcommand("verify", "run identity checks");
  verify->add_option("--config", va.config, "config file");
  verify->add_option("--theorem", va.theorems, "theorem id (repeatable, or 'all')");
  auto* oq = verify->add_option("--q", va_q, "restrict to one modulus");
  auto* oc = verify->add_option("--conrey", va_conrey, "restrict to one character");
  verify->add_option("--z", va.z, "z values as re,im or a+bi (repeatable)");
  verify->add_option("--alpha", va.alpha, "alpha values (repeatable)");
  verify->add_option("--zeros", va.zeros, "'compute' or a zeros CSV path");
  auto* ot = verify->add_option("--tol", va_tol, "tolerance override for all theorems");
  verify->add_option("--out", va.out, "output path (default stdout)");
  verify->add_option("--format", va.format, "json or csv");
  verify->add_option("--cache", va.cache, "cache directory");
  auto* oth = verify->add_option("--threads", va_threads, "worker threads");
  verify->add_flag("--quiet", va.quiet, "suppress the summary table");

  std::string rep_in;
  bool rep_summary = false;
  auto* report = app.add_subcommand("report", "print a stored JSON report");
  report->add_option("--in", rep_in, "report JSON")->required();
  report->add_flag("--summary", rep_summary, "pass/fail table per theorem");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*chars) return cmd_chars(chars_q, chars_json);
    if (*lvalue) return cmd_lvalue(lv_q, lv_n, lv_s);
    if (*zeros) return cmd_zeros(z_q, z_n, z_tmax, z_out);
    if (*verify) {
      if (*oq) va.q = va_q;
      if (*oc) va.conrey = va_conrey;
      if (*ot) va.tol = va_tol;
      if (*oth) va.threads = va_threads;
      return cmd_verify(va);
    }
    if (*report) return cmd_report(rep_in, rep_summary);
  } catch (const config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const zeros_schema_error& e) {
    std::cerr << "zeros file error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const precondition_error& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
