#pragma once

// Identity checks: every side of every transformation formula, with residuals.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charxi/integrals.hpp"
#include "charxi/lfun.hpp"
#include "charxi/series.hpp"

namespace charxi {

enum class TheoremId {
  koshfec,
  ramgen_even,
  ramgen_odd,
  cor_P,
  cor_Q,
  rim,
  rhl_odd,
  rhl_even,
  lemma_lprod,
  lemma_41,
  lemma_42,
  lemma_43,
  lemma_44,
  kluyver,
  fabyz,
  gfica_equiv,
};

inline constexpr std::array<TheoremId, 16> kAllTheorems = {
    TheoremId::koshfec,  TheoremId::ramgen_even, TheoremId::ramgen_odd, TheoremId::cor_P,    TheoremId::cor_Q,    TheoremId::rim,
    TheoremId::rhl_odd,  TheoremId::rhl_even,    TheoremId::lemma_lprod, TheoremId::lemma_41, TheoremId::lemma_42, TheoremId::lemma_43,
    TheoremId::lemma_44, TheoremId::kluyver,     TheoremId::fabyz,      TheoremId::gfica_equiv,
};

inline std::string_view theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::koshfec: return "koshfec";
    case TheoremId::ramgen_even: return "ramgen_even";
    case TheoremId::ramgen_odd: return "ramgen_odd";
    case TheoremId::cor_P: return "cor_P";
    case TheoremId::cor_Q: return "cor_Q";
    case TheoremId::rim: return "rim";
    case TheoremId::rhl_odd: return "rhl_odd";
    case TheoremId::rhl_even: return "rhl_even";
    case TheoremId::lemma_lprod: return "lemma_lprod";
    case TheoremId::lemma_41: return "lemma_41";
    case TheoremId::lemma_42: return "lemma_42";
    case TheoremId::lemma_43: return "lemma_43";
    case TheoremId::lemma_44: return "lemma_44";
    case TheoremId::kluyver: return "kluyver";
    case TheoremId::fabyz: return "fabyz";
    case TheoremId::gfica_equiv: return "gfica_equiv";
  }
  return "?";
}

inline std::optional<TheoremId> parse_theorem(std::string_view s) {
  for (TheoremId id : kAllTheorems)
    if (theorem_name(id) == s) return id;
  return std::nullopt;
}

struct Side {
  std::string label;
  cplx value{0.0, 0.0};
};

enum class ResidualMode { relative, absolute };

/// One evaluated identity: labeled sides asserted equal, plus residuals.
///
/// abs_residual is the largest pairwise difference between sides,
/// rel_residual divides it by max(max |side|, 1e-30). pass compares the
/// residual selected by mode against tolerance.
struct IdentityCheck {
  TheoremId theorem = TheoremId::koshfec;
  int modulus = 0;
  int conrey = 0;
  cplx z{0.0, 0.0};
  double alpha = 0.0;
  std::string variant;
  std::vector<Side> sides;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tolerance = 0.0;
  ResidualMode mode = ResidualMode::relative;
  bool pass = false;
  std::vector<std::pair<std::string, double>> diagnostics;
  std::string error;            // non-empty if evaluation threw
  bool side_condition = true;   // extra pass requirement beyond the residual

  double residual() const { return mode == ResidualMode::relative ? rel_residual : abs_residual; }

  void diag(std::string key, double v) { diagnostics.emplace_back(std::move(key), v); }

  std::optional<double> diagnostic(std::string_view key) const {
    for (const auto& [k, v] : diagnostics)
      if (k == key) return v;
    return std::nullopt;
  }

  void finalize() {
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < sides.size(); ++i) {
      scale = std::max(scale, std::abs(sides[i].value));
      for (std::size_t j = i + 1; j < sides.size(); ++j) diff = std::max(diff, std::abs(sides[i].value - sides[j].value));
    }
    abs_residual = diff;
    rel_residual = diff / std::max(scale, 1e-30);
    pass = error.empty() && side_condition && std::isfinite(residual()) && residual() < tolerance;
  }
};

/// Default acceptance tolerance per theorem and its residual mode.
inline std::pair<double, ResidualMode> default_tolerance(TheoremId id) {
  switch (id) {
    case TheoremId::koshfec: return {1e-6, ResidualMode::relative};
    case TheoremId::ramgen_even:
    case TheoremId::ramgen_odd: return {1e-5, ResidualMode::relative};
    case TheoremId::cor_P:
    case TheoremId::cor_Q: return {1e-5, ResidualMode::relative};
    case TheoremId::rim: return {1e-7, ResidualMode::relative};
    case TheoremId::rhl_odd:
    case TheoremId::rhl_even: return {1e-3, ResidualMode::absolute};
    case TheoremId::lemma_lprod: return {1e-12, ResidualMode::absolute};
    case TheoremId::lemma_41:
    case TheoremId::lemma_42: return {1e-6, ResidualMode::absolute};
    case TheoremId::lemma_43:
    case TheoremId::lemma_44: return {1.0, ResidualMode::relative};
    case TheoremId::kluyver: return {1e-4, ResidualMode::absolute};
    case TheoremId::fabyz: return {1e-7, ResidualMode::relative};
    case TheoremId::gfica_equiv: return {1e-8, ResidualMode::absolute};
  }
  return {0.0, ResidualMode::relative};
}

namespace detail {

inline IdentityCheck make_check(TheoremId id, const LContext& ctx, cplx z, double alpha, std::optional<double> tol) {
  IdentityCheck c;
  c.theorem = id;
  c.modulus = ctx.q();
  c.conrey = ctx.chi.conrey_index;
  c.z = z;
  c.alpha = alpha;
  const auto [t, m] = default_tolerance(id);
  c.tolerance = tol.value_or(t);
  c.mode = m;
  return c;
}

template <class Body>
IdentityCheck run_check(IdentityCheck c, Body&& body) {
  try {
    body(c);
  } catch (const std::exception& e) {
    c.error = e.what();
  }
  c.finalize();
  return c;
}

inline void require_parity(const LContext& ctx, Parity p, const char* who) {
  if (ctx.chi.parity() != p)
    throw precondition_error(std::string(who) + (p == Parity::even ? ": requires an even character" : ": requires an odd character"));
}

inline constexpr double kLimitOffset = 1e-6;

}  // namespace detail

/// F(z,a,chi) = F(-z,1/a,chibar) = F(-z,a,chibar) = F(z,1/a,chi) = (1/8 pi) int Xi Xi cos.
inline IdentityCheck check_koshfec(const LContext& ctx, cplx z, double alpha, std::optional<double> tol = {}) {
  return detail::run_check(detail::make_check(TheoremId::koshfec, ctx, z, alpha, tol), [&](IdentityCheck& c) {
    const LContext bar = ctx.conjugate_context();
    const double beta = 1.0 / alpha;
    const SeriesValue f1 = bessel_side(z, alpha, ctx);
    c.sides.push_back({"F(z,alpha,chi)", f1.value});
    c.sides.push_back({"F(-z,beta,chibar)", bessel_side(-z, beta, bar).value});
    c.sides.push_back({"F(-z,alpha,chibar)", bessel_side(-z, alpha, bar).value});
    c.sides.push_back({"F(z,beta,chi)", bessel_side(z, beta, ctx).value});
    const IntegralResult in = xi_product_integral(XiKernel{KernelTag::unit, z}, alpha, ctx);
    c.sides.push_back({"integral/(8pi)", in.value / (8.0 * std::numbers::pi)});
    c.diag("series_terms", static_cast<double>(f1.terms));
    c.diag("quad_error", in.error / (8.0 * std::numbers::pi));
    c.diag("t_max", in.t_max);
    if (z == cplx{0.0, 0.0}) {
      // one-sided limits z -> 0+ and 0- against the z = 0 specialization
      const double lim = std::max(std::abs(bessel_side(detail::kLimitOffset, alpha, ctx).value - f1.value),
                                  std::abs(bessel_side(-detail::kLimitOffset, alpha, ctx).value - f1.value));
      c.diag("limit_gap", lim / std::abs(f1.value));
    }
  });
}

/// Both bracketed lines of the Hurwitz-series formula and the kernel integral.
inline IdentityCheck check_ramgen(const LContext& ctx, cplx z, double alpha, std::optional<double> tol = {}) {
  const bool even = ctx.chi.is_even();
  const TheoremId id = even ? TheoremId::ramgen_even : TheoremId::ramgen_odd;
  return detail::run_check(detail::make_check(id, ctx, z, alpha, tol), [&](IdentityCheck& c) {
    const double q = ctx.q();
    const double pi = std::numbers::pi;
    const SeriesValue a = hurwitz_side(z, alpha, ctx);
    const SeriesValue b = hurwitz_side(z, 1.0 / alpha, ctx);
    c.sides.push_back({"alpha_line", a.value});
    c.sides.push_back({"beta_line", b.value});
    if (even) {
      const IntegralResult in = xi_product_integral(XiKernel{KernelTag::omega, z}, alpha, ctx);
      c.sides.push_back({"omega_integral", in.value / (64.0 * std::pow(pi, 1.5) * q)});
      c.diag("quad_error", in.error / (64.0 * std::pow(pi, 1.5) * q));
    } else {
      const IntegralResult in = xi_product_integral(XiKernel{KernelTag::lambda, z}, alpha, ctx);
      c.sides.push_back({"lambda_integral", in.value / (4.0 * std::sqrt(pi) * cplx{0.0, 1.0} * q * q)});
      c.diag("quad_error", in.error / (4.0 * std::sqrt(pi) * q * q));
    }
    c.diag("tail_error", std::max(a.error, b.error));
    c.diag("exact_terms", static_cast<double>(std::max(a.terms, b.terms)));
  });
}

/// P (even chi, real part) or Q (odd chi, imaginary part) of F(alpha,chi):
/// four-fold chain plus the z = 0 kernel integral.
inline IdentityCheck check_cor(const LContext& ctx, double alpha, std::optional<double> tol = {}) {
  const bool even = ctx.chi.is_even();
  const TheoremId id = even ? TheoremId::cor_P : TheoremId::cor_Q;
  return detail::run_check(detail::make_check(id, ctx, 0.0, alpha, tol), [&](IdentityCheck& c) {
    const LContext bar = ctx.conjugate_context();
    const double beta = 1.0 / alpha;
    const double pi = std::numbers::pi;
    auto part = [even](cplx v) { return cplx{even ? v.real() : v.imag(), 0.0}; };
    const std::string name = even ? "P" : "Q";
    c.sides.push_back({name + "(alpha,chi)", part(f_sum(alpha, ctx).value)});
    c.sides.push_back({name + "(beta,chibar)", part(f_sum(beta, bar).value)});
    c.sides.push_back({name + "(alpha,chibar)", part(f_sum(alpha, bar).value)});
    c.sides.push_back({name + "(beta,chi)", part(f_sum(beta, ctx).value)});
    if (even) {
      const IntegralResult in = xi_product_integral(XiKernel{KernelTag::omega, 0.0}, alpha, ctx);
      c.sides.push_back({"integral", in.value / (128.0 * std::pow(pi, 1.5))});
      c.diag("quad_error", in.error / (128.0 * std::pow(pi, 1.5)));
    } else {
      const IntegralResult in = xi_product_integral(XiKernel{KernelTag::lambda, 0.0}, alpha, ctx);
      c.sides.push_back({"integral", in.value / (8.0 * std::sqrt(pi) * ctx.q())});
      c.diag("quad_error", in.error / (8.0 * std::sqrt(pi) * ctx.q()));
    }
  });
}

/// F(alpha,chi) is real for even chi and purely imaginary for odd chi.
inline IdentityCheck check_rim(const LContext& ctx, double alpha, std::optional<double> tol = {}) {
  return detail::run_check(detail::make_check(TheoremId::rim, ctx, 0.0, alpha, tol), [&](IdentityCheck& c) {
    const SeriesValue f = f_sum(alpha, ctx);
    const cplx proj = ctx.chi.is_even() ? cplx{f.value.real(), 0.0} : cplx{0.0, f.value.imag()};
    c.sides.push_back({"F(alpha,chi)", f.value});
    c.sides.push_back({ctx.chi.is_even() ? "Re F" : "i Im F", proj});
    c.diag("tail_error", f.error);
  });
}

/// Bracketed zero sums and Moebius sums on both sides of the
/// Ramanujan-Hardy-Littlewood type formula, as printed.
///
/// chi_zeros / chibar_zeros are upper-half-plane records for chi and chibar.
inline IdentityCheck check_rhl(const LContext& ctx, double alpha, const std::vector<ZeroRecord>& chi_zeros,
                               const std::vector<ZeroRecord>& chibar_zeros, std::optional<double> tol = {}) {
  const bool odd = !ctx.chi.is_even();
  const TheoremId id = odd ? TheoremId::rhl_odd : TheoremId::rhl_even;
  return detail::run_check(detail::make_check(id, ctx, 0.0, alpha, tol), [&](IdentityCheck& c) {
    const LContext bar = ctx.conjugate_context();
    const double beta = 1.0 / alpha;
    const double q = ctx.q();
    const double pi = std::numbers::pi;
    const Parity par = ctx.chi.parity();
    const auto zs_chi = zeros_both_halves(chi_zeros, chibar_zeros);
    const auto zs_bar = zeros_both_halves(chibar_zeros, chi_zeros);
    const ZeroSum za = zero_sum_side(alpha, ctx.q(), zs_chi, par);
    const ZeroSum zb = zero_sum_side(beta, ctx.q(), zs_bar, par);
    const int k = odd ? 2 : 1;
    const SeriesValue ma = mobius_side(alpha, ctx, k);
    const SeriesValue mb = mobius_side(beta, bar, k);
    cplx lhs, rhs;
    if (odd) {
      lhs = std::pow(alpha, 1.5) * std::sqrt(ctx.gauss) * (ma.value - q / (4.0 * pi * alpha * alpha) * za.value);
      rhs = std::pow(beta, 1.5) * std::sqrt(bar.gauss) * (mb.value - q / (4.0 * pi * beta * beta) * zb.value);
    } else {
      lhs = std::sqrt(alpha) * std::sqrt(ctx.gauss) * (ma.value - std::sqrt(q) / (4.0 * std::sqrt(pi) * alpha) * za.value);
      rhs = std::sqrt(beta) * std::sqrt(bar.gauss) * (mb.value - std::sqrt(q) / (4.0 * std::sqrt(pi) * beta) * zb.value);
    }
    c.sides.push_back({"alpha_side", lhs});
    c.sides.push_back({"beta_side", rhs});
    c.diag("zeros", static_cast<double>(zs_chi.size()));
    c.diag("brackets", static_cast<double>(za.bracket_changes.size()));
    c.diag("last_bracket_alpha", za.last_bracket);
    c.diag("last_bracket_beta", zb.last_bracket);
    c.diag("shrinking", (za.shrinking && zb.shrinking) ? 1.0 : 0.0);
    c.diag("mobius_terms", static_cast<double>(std::max(ma.terms, mb.terms)));
    if (odd) {
      // the intermediate cancellation between the two zero sums
      const cplx ca = q * std::sqrt(ctx.gauss) / (2.0 * pi * std::sqrt(alpha)) * za.value;
      const cplx cb = q * std::sqrt(bar.gauss) / (2.0 * pi * std::sqrt(beta)) * zb.value;
      c.diag("zero_cancellation", std::abs(ca + cb) / std::max({std::abs(ca), std::abs(lhs), 1e-300}));
    }
    c.side_condition = za.shrinking && zb.shrinking;
  });
}

/// Dirichlet coefficients of L(s,chibar) L(s-eta,chi) against chibar(n) sum_{d|n} chi^2(d) d^eta, n <= n_max.
inline IdentityCheck check_lprod(const LContext& ctx, cplx eta, int n_max = 200, std::optional<double> tol = {}) {
  return detail::run_check(detail::make_check(TheoremId::lemma_lprod, ctx, eta, 0.0, tol), [&](IdentityCheck& c) {
    double worst = -1.0;
    cplx conv_w, form_w;
    int n_w = 1;
    for (int n = 1; n <= n_max; ++n) {
      cplx conv{0.0, 0.0};
      for (int m = 1; m <= n; ++m)
        if (n % m == 0) conv += std::conj(ctx.chi(n / m)) * ctx.chi(m) * std::exp(eta * std::log(static_cast<double>(m)));
      const cplx form = std::conj(ctx.chi(n)) * twisted_divisor(n, eta, ctx.chibar);
      const double d = std::abs(conv - form);
      if (d > worst) {
        worst = d;
        conv_w = conv;
        form_w = form;
        n_w = n;
      }
    }
    c.variant = "n<=" + std::to_string(n_max);
    c.sides.push_back({"convolution", conv_w});
    c.sides.push_back({"divisor_form", form_w});
    c.diag("worst_n", n_w);
  });
}

/// Vertical-line integral of L(1-s,chi) x^{-s} / sin(pi s) against -psi(x,chi)/pi.
inline IdentityCheck check_lemma41(const LContext& ctx, double x, std::optional<double> tol = {}) {
  return detail::run_check(detail::make_check(TheoremId::lemma_41, ctx, 0.0, x, tol), [&](IdentityCheck& c) {
    const IntegralResult r = vertical_line_integral(lemma41_integrand(x, ctx), 0.5);
    c.variant = "c=0.5";
    c.sides.push_back({"line_integral", r.value});
    c.sides.push_back({"-psi/pi", -char_psi(x, ctx) / std::numbers::pi});
    c.diag("quad_error", r.error);
    c.diag("t_max", r.t_max);
  });
}

/// Vertical-line integral at c = 0 against x^{z/2} Gamma(z+1) L(z+1,x,chi).
inline IdentityCheck check_lemma42(const LContext& ctx, cplx z, double x, std::optional<double> tol = {}) {
  return detail::run_check(detail::make_check(TheoremId::lemma_42, ctx, z, x, tol), [&](IdentityCheck& c) {
    const IntegralResult r = vertical_line_integral(lemma42_integrand(z, x, ctx), 0.0);
    c.variant = "c=0";
    c.sides.push_back({"line_integral", r.value});
    c.sides.push_back({"closed_form", std::exp(z / 2.0 * std::log(x)) * gamma(z + 1.0) * char_hurwitz_l(z + 1.0, x, ctx)});
    c.diag("quad_error", r.error);
    c.diag("t_max", r.t_max);
  });
}

namespace detail {

// Asymptotic check: for J = 1..4 the error of the J-term partial sum must be
// below the first omitted nonzero term. Residual = worst err/omitted ratio.
template <class Exact, class Partial>
void asymptotic_check(IdentityCheck& c, const LContext& ctx, Exact&& exact_f, Partial&& partial) {
  const cplx exact = exact_f();
  double worst = 0.0;
  for (int J = 1; J <= 4; ++J) {
    const double err = std::abs(exact - partial(J));
    int next = J + 1;
    while (next <= 8 && ctx.bernoulli[next] == cplx{0.0, 0.0}) ++next;
    const double omitted = std::abs(partial(next) - partial(next - 1));
    c.diag("err_J" + std::to_string(J), err);
    c.diag("omitted_J" + std::to_string(J), omitted);
    worst = std::max(worst, err / omitted);
  }
  c.sides.push_back({"exact", exact});
  c.sides.push_back({"partial_J4", partial(4)});
  c.finalize();
  c.rel_residual = worst;
}

}  // namespace detail

/// psi(a,chi) against its J-term expansion, J = 1..4.
inline IdentityCheck check_lemma43(const LContext& ctx, double a, std::optional<double> tol = {}) {
  IdentityCheck c = detail::make_check(TheoremId::lemma_43, ctx, 0.0, a, tol);
  c.variant = "J=1..4";
  try {
    detail::asymptotic_check(c, ctx, [&] { return char_psi(a, ctx); }, [&](int J) { return psi_asymptotic(a, ctx, J); });
    c.pass = c.rel_residual < c.tolerance;
  } catch (const std::exception& e) {
    c.error = e.what();
    c.pass = false;
  }
  return c;
}

/// L(w,a,chi) at w = z+1 against its J-term expansion, J = 1..4.
inline IdentityCheck check_lemma44(const LContext& ctx, cplx z, double a, std::optional<double> tol = {}) {
  IdentityCheck c = detail::make_check(TheoremId::lemma_44, ctx, z, a, tol);
  c.variant = "w=z+1,J=1..4";
  try {
    const cplx w = z + 1.0;
    detail::asymptotic_check(c, ctx, [&] { return char_hurwitz_l(w, a, ctx); }, [&](int J) { return hurwitz_l_asymptotic(w, a, ctx, J); });
    c.pass = c.rel_residual < c.tolerance;
  } catch (const std::exception& e) {
    c.error = e.what();
    c.pass = false;
  }
  return c;
}

/// Smoothed partial sums of sum chi(n) mu(n)/n against 1/L(1,chi).
inline IdentityCheck check_kluyver(const LContext& ctx, long N, std::optional<double> tol = {}) {
  return detail::run_check(detail::make_check(TheoremId::kluyver, ctx, 0.0, 0.0, tol), [&](IdentityCheck& c) {
    const KluyverResult k = kluyver(ctx, N);
    c.variant = "N=" + std::to_string(N);
    c.sides.push_back({"block_cesaro_mean", k.cesaro});
    c.sides.push_back({"1/L(1,chi)", k.target});
    c.diag("raw_error", std::abs(k.raw - k.target));
    c.diag("block_average_error", std::abs(k.block_average - k.target));
  });
}

/// (k-2)! q^{k-2} G(chi) / (2^{k-1} pi^{k-2} i^{k-2}) L(k-1,chibar) = L'(2-k,chi),
/// with k = 2 for even chi and k = 3 for odd chi. The z field records s = 2-k.
inline IdentityCheck check_fabyz(const LContext& ctx, std::optional<double> tol = {}) {
  const int k = ctx.chi.is_even() ? 2 : 3;
  return detail::run_check(detail::make_check(TheoremId::fabyz, ctx, 2.0 - k, 0.0, tol), [&](IdentityCheck& c) {
    const LContext bar = ctx.conjugate_context();
    const double q = ctx.q();
    const double pi = std::numbers::pi;
    double fact = 1.0;
    for (int i = 2; i <= k - 2; ++i) fact *= i;
    const cplx ipow = std::pow(cplx{0.0, 1.0}, k - 2);
    const cplx lhs = fact * std::pow(q, k - 2) * ctx.gauss / (std::pow(2.0, k - 1) * std::pow(pi, k - 2) * ipow) *
                     dirichlet_l(static_cast<double>(k - 1), bar);
    c.variant = "k=" + std::to_string(k);
    c.sides.push_back({"gauss_L_value", lhs});
    c.sides.push_back({"L_prime", l_derivative(2.0 - k, ctx)});
  });
}

/// Half-line kernel integral against its vertical-line form, one kernel.
inline IdentityCheck check_gfica(const LContext& ctx, KernelTag tag, cplx z, double alpha, std::optional<double> tol = {}) {
  XiKernel kernel{tag, z};
  IdentityCheck c0 = detail::make_check(TheoremId::gfica_equiv, ctx, z, alpha, tol);
  if (!tol) c0.tolerance = 10.0 * kernel.default_tol();
  c0.variant = kernel_name(tag);
  return detail::run_check(std::move(c0), [&](IdentityCheck& c) {
    const LContext bar = ctx.conjugate_context();
    const IntegralResult h = xi_product_integral(kernel, alpha, ctx);
    QuadratureSpec vs;
    vs.tol = kernel.default_tol() / 100.0;
    const IntegralResult v = vertical_line_integral(gfica_vertical_integrand(kernel, alpha, ctx, bar), 0.5, vs);
    c.sides.push_back({"half_line", h.value});
    c.sides.push_back({"vertical_line", kernel.kernel_over_f() * std::numbers::pi / std::sqrt(alpha) * v.value});
    c.diag("quad_error", h.error);
  });
}

}  // namespace charxi
