#pragma once

// Xi-product integrals over the half-line and vertical-line integrals.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>

#include "charxi/errors.hpp"
#include "charxi/lfun.hpp"
#include "charxi/quadrature.hpp"
#include "charxi/specfun.hpp"

namespace charxi {

/// tol <= 0 and t_max <= 0 mean "choose automatically".
struct QuadratureSpec {
  int panel_order = 16;
  double panel_width = 1.0;
  double t_max = 0.0;
  double tol = 0.0;

  void validate() const {
    if (panel_order < 2 || panel_order > 256) throw precondition_error("QuadratureSpec: panel_order must lie in [2, 256]");
    if (!(panel_width > 0.0) || panel_width > 1.0) throw precondition_error("QuadratureSpec: panel_width must lie in (0, 1]");
  }
};

struct IntegralResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  double t_max = 0.0;
  int panels = 0;
  double panel_width = 0.0;
};

enum class KernelTag { unit, omega, lambda };

inline const char* kernel_name(KernelTag k) {
  switch (k) {
    case KernelTag::unit: return "unit";
    case KernelTag::omega: return "omega";
    case KernelTag::lambda: return "lambda";
  }
  return "?";
}

namespace detail {

inline void require_strip(cplx z, const char* who) {
  if (!(std::abs(z.real()) < 1.0)) throw precondition_error(std::string(who) + ": requires |Re z| < 1");
}

// log Gamma(a) + log Gamma(b), refusing poles.
inline cplx log_gamma_pair(cplx a, cplx b) {
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) throw domain_error("kernel: Gamma pole encountered");
  return log_gamma(a) + log_gamma(b);
}

}  // namespace detail

/// ((z+1)^2+t^2) G((-z-1+it)/4) G((-z-1-it)/4) + ((z-1)^2+t^2) G((z-1+it)/4) G((z-1-it)/4)
inline cplx kernel_omega(cplx z, double t) {
  detail::require_strip(z, "kernel_omega");
  const cplx it{0.0, t};
  const cplx a = (z + 1.0) * (z + 1.0) + t * t;
  const cplx b = (z - 1.0) * (z - 1.0) + t * t;
  return a * std::exp(detail::log_gamma_pair((-z - 1.0 + it) / 4.0, (-z - 1.0 - it) / 4.0)) +
         b * std::exp(detail::log_gamma_pair((z - 1.0 + it) / 4.0, (z - 1.0 - it) / 4.0));
}

/// G((z+1+it)/4) G((z+1-it)/4) + G((-z+1+it)/4) G((-z+1-it)/4)
inline cplx kernel_lambda(cplx z, double t) {
  detail::require_strip(z, "kernel_lambda");
  const cplx it{0.0, t};
  return std::exp(detail::log_gamma_pair((z + 1.0 + it) / 4.0, (z + 1.0 - it) / 4.0)) +
         std::exp(detail::log_gamma_pair((-z + 1.0 + it) / 4.0, (-z + 1.0 - it) / 4.0));
}

struct XiKernel {
  KernelTag tag = KernelTag::unit;
  cplx z{0.0, 0.0};

  cplx operator()(double t) const {
    switch (tag) {
      case KernelTag::unit: return {1.0, 0.0};
      case KernelTag::omega: return kernel_omega(z, t);
      case KernelTag::lambda: return kernel_lambda(z, t);
    }
    return {0.0, 0.0};
  }

  /// phi(z,s) with f(z,t/2) = kernel(t)/2 (omega, lambda) or f = 1 (unit).
  cplx phi(cplx zz, cplx s) const {
    switch (tag) {
      case KernelTag::unit: return {1.0, 0.0};
      case KernelTag::omega: return (zz + 1.0 + 2.0 * s) * gamma((-zz - 1.0) / 4.0 + s / 2.0);
      case KernelTag::lambda: return gamma((zz + 1.0) / 4.0 + s / 2.0);
    }
    return {0.0, 0.0};
  }

  /// kernel(t) / f(z, t/2): 1 for the unit kernel, 2 for omega and lambda.
  double kernel_over_f() const { return tag == KernelTag::unit ? 1.0 : 2.0; }

  double default_tol() const { return tag == KernelTag::unit ? 1e-9 : 1e-7; }
};

namespace detail {

// Stirling-type envelope of |Xi((t+iz)/2, chibar) Xi((t-iz)/2, chi)| with the
// L-factors bounded by 10 (q max(t/2,1))^{1.6} each.
inline double xi_pair_envelope(double t, cplx z, const LContext& ctx) {
  const double q = ctx.q();
  const double lq = std::log(std::numbers::pi / q);
  double env = 1.0;
  for (double sgn : {1.0, -1.0}) {
    const cplx s = cplx{0.5, 0.0} + cplx{0.0, 1.0} * (t + sgn * cplx{0.0, 1.0} * z) / 2.0;
    const cplx half = 0.5 * (s + static_cast<double>(ctx.b()));
    env *= std::exp((-half * lq + log_gamma(half)).real());
    env *= 10.0 * std::pow(q * std::max(std::abs(t) / 2.0, 1.0), 1.6);
  }
  return env;
}

inline constexpr double kMaxHalfLineHeight = 2000.0;
inline constexpr int kMaxPanelHalvings = 4;

}  // namespace detail

/// First integer height >= 10 beyond which |kernel| x envelope < tol/100.
inline double xi_product_truncation(const XiKernel& kernel, const LContext& ctx, double tol) {
  for (double t = 10.0; t <= detail::kMaxHalfLineHeight; t += 1.0) {
    const double env = std::abs(kernel(t)) * detail::xi_pair_envelope(t, kernel.z, ctx);
    if (env < tol / 100.0) return t;
  }
  throw quadrature_budget_error("xi_product_truncation: envelope never fell below tol/100", 0.0, detail::kMaxHalfLineHeight);
}

/// int_0^inf kernel(z,t) Xi((t+iz)/2, chibar) Xi((t-iz)/2, chi) cos(t log(alpha)/2) dt
inline IntegralResult xi_product_integral(const XiKernel& kernel, double alpha, const LContext& ctx, QuadratureSpec spec = {}) {
  detail::require_strip(kernel.z, "xi_product_integral");
  if (!(alpha > 0.0)) throw precondition_error("xi_product_integral: alpha must be positive");
  spec.validate();
  const double tol = spec.tol > 0.0 ? spec.tol : kernel.default_tol();
  const double t_max = spec.t_max > 0.0 ? spec.t_max : xi_product_truncation(kernel, ctx, tol);
  const LContext bar = ctx.conjugate_context();
  const cplx iz = cplx{0.0, 1.0} * kernel.z;
  const double mu = 0.5 * std::log(alpha);
  auto f = [&](double t) {
    return kernel(t) * big_xi((t + iz) / 2.0, bar) * big_xi((t - iz) / 2.0, ctx) * std::cos(mu * t);
  };
  double width = spec.panel_width;
  QuadResult r;
  for (int k = 0; k <= detail::kMaxPanelHalvings; ++k) {
    r = integrate_panels(f, 0.0, t_max, width, spec.panel_order);
    if (r.error <= tol) return {r.value, r.error, t_max, r.panels, width};
    width *= 0.5;
  }
  throw quadrature_budget_error("xi_product_integral: tolerance not reached", r.error, t_max);
}

/// Integrand on a vertical line with its declared analyticity strip.
struct ContourIntegrand {
  std::string name;
  std::function<cplx(cplx)> f;
  double strip_lo = -HUGE_VAL;
  double strip_hi = HUGE_VAL;
};

namespace detail {

inline constexpr double kMaxVerticalHeight = 400.0;

// Smallest integer T >= 5 with |f(c +- iT')| < threshold at T' = T, T+1, T+2.
inline double vertical_truncation(const ContourIntegrand& g, double c, double threshold) {
  int below = 0;
  for (double t = 5.0; t <= kMaxVerticalHeight; t += 1.0) {
    const double m = std::max(std::abs(g.f(cplx{c, t})), std::abs(g.f(cplx{c, -t})));
    below = (m < threshold) ? below + 1 : 0;
    if (below == 3) return t;
  }
  throw quadrature_budget_error(g.name + ": insufficient decay on the vertical line", 0.0, kMaxVerticalHeight);
}

}  // namespace detail

/// (1/2 pi i) int_{c-i inf}^{c+i inf} g(s) ds, i.e. (1/2 pi) int g(c+i tau) d tau.
inline IntegralResult vertical_line_integral(const ContourIntegrand& g, double c, QuadratureSpec spec = {}) {
  if (!(c > g.strip_lo && c < g.strip_hi))
    throw precondition_error(g.name + ": abscissa " + std::to_string(c) + " outside the declared strip");
  spec.validate();
  const double tol = spec.tol > 0.0 ? spec.tol : 1e-10;
  const double t_max = spec.t_max > 0.0 ? spec.t_max : detail::vertical_truncation(g, c, tol / 100.0);
  auto f = [&](double tau) { return g.f(cplx{c, tau}); };
  double width = spec.panel_width;
  QuadResult r;
  const double scale = 0.5 / std::numbers::pi;
  for (int k = 0; k <= detail::kMaxPanelHalvings; ++k) {
    r = integrate_panels(f, -t_max, t_max, width, spec.panel_order);
    if (scale * r.error <= tol) return {scale * r.value, scale * r.error, t_max, r.panels, width};
    width *= 0.5;
  }
  throw quadrature_budget_error(g.name + ": tolerance not reached", scale * r.error, t_max);
}

// Descriptors. Each comment gives the closed form of the line integral.

/// -> K_nu(w x), for c > |Re nu|.
inline ContourIntegrand bessmel_integrand(cplx nu, double w, double x) {
  return {"bessmel",
          [=](cplx s) {
            return std::exp((s - 2.0) * std::log(2.0) - s * std::log(w * x) + log_gamma(s / 2.0 - nu / 2.0) +
                            log_gamma(s / 2.0 + nu / 2.0));
          },
          std::abs(nu.real()), HUGE_VAL};
}

/// -> x K_nu(w x), for c > |Re nu| - 1.
inline ContourIntegrand bessmel1_integrand(cplx nu, double w, double x) {
  return {"bessmel1",
          [=](cplx s) {
            return std::exp((s - 1.0) * std::log(2.0) - (s + 1.0) * std::log(w) - s * std::log(x) +
                            log_gamma((s + 1.0) / 2.0 - nu / 2.0) + log_gamma((s + 1.0) / 2.0 + nu / 2.0));
          },
          std::abs(nu.real()) - 1.0, HUGE_VAL};
}

/// -> -(1/pi) psi(x, chi), for 0 < c < 1.
inline ContourIntegrand lemma41_integrand(double x, const LContext& ctx) {
  return {"lemma41",
          [x, &ctx](cplx s) {
            return dirichlet_l(1.0 - s, ctx) / std::sin(std::numbers::pi * s) * std::exp(-s * std::log(x));
          },
          0.0, 1.0};
}

/// -> x^{z/2} Gamma(z+1) L(z+1, x, chi), for |c| < Re z / 2.
inline ContourIntegrand lemma42_integrand(cplx z, double x, const LContext& ctx) {
  const double h = 0.5 * z.real();
  return {"lemma42",
          [z, x, &ctx](cplx s) {
            const cplx w = 1.0 - s + z / 2.0;
            return std::exp(log_gamma(s + z / 2.0) + log_gamma(w) - s * std::log(x)) * dirichlet_l(w, ctx);
          },
          -h, h};
}

/// -> -(1 - e^{-x}), for -1 < c < 0.
inline ContourIntegrand gme_integrand(double x) {
  return {"gme", [x](cplx s) { return std::exp(log_gamma(s) - s * std::log(x)); }, -1.0, 0.0};
}

/// (phi phi + phi phi)(s) xi(s - z/2, chibar) xi(s + z/2, chi) alpha^s.
///
/// Its line integral V at c = 1/2 satisfies
/// int_0^inf kernel Xi Xi cos = kernel_over_f (pi / sqrt(alpha)) V.
inline ContourIntegrand gfica_vertical_integrand(const XiKernel& kernel, double alpha, const LContext& ctx, const LContext& bar) {
  const double h = 0.5 * std::abs(kernel.z.real());
  return {"gfica",
          [kernel, alpha, &ctx, &bar](cplx s) {
            const cplx z = kernel.z;
            const cplx ph = kernel.phi(z, s - 0.5) * kernel.phi(z, 0.5 - s) + kernel.phi(-z, s - 0.5) * kernel.phi(-z, 0.5 - s);
            return ph * xi_completed(s - z / 2.0, bar) * xi_completed(s + z / 2.0, ctx) * std::exp(s * std::log(alpha));
          },
          h, 1.0 - h};
}

}  // namespace charxi
