#pragma once

// Gauss-Legendre panel quadrature with an embedded order-doubling error estimate.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "charxi/errors.hpp"

namespace charxi {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

namespace detail {

inline GaussRule build_gauss_rule(int n) {
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

}  // namespace detail

/// Cached n-point Gauss-Legendre rule.
inline const GaussRule& gauss_rule(int n) {
  if (n < 2 || n > 512) throw precondition_error("gauss_rule: order must lie in [2, 512]");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::build_gauss_rule(n)).first;
  return it->second;
}

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  int panels = 0;
};

/// Integrate f over [a, b] split into panels of width <= panel_width.
///
/// Each panel uses order n and 2n; the 2n sum is returned and the summed
/// absolute differences form the error estimate.
template <class F>
QuadResult integrate_panels(F&& f, double a, double b, double panel_width, int order) {
  QuadResult res;
  if (!(b > a)) return res;
  const int n_panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width - 1e-12)));
  const double w = (b - a) / n_panels;
  const GaussRule& lo = gauss_rule(order);
  const GaussRule& hi = gauss_rule(2 * order);
  for (int p = 0; p < n_panels; ++p) {
    const double left = a + p * w;
    const double mid = left + 0.5 * w;
    const double half = 0.5 * w;
    std::complex<double> s_lo{0.0, 0.0};
    std::complex<double> s_hi{0.0, 0.0};
    for (std::size_t i = 0; i < lo.nodes.size(); ++i) s_lo += lo.weights[i] * std::complex<double>(f(mid + half * lo.nodes[i]));
    for (std::size_t i = 0; i < hi.nodes.size(); ++i) s_hi += hi.weights[i] * std::complex<double>(f(mid + half * hi.nodes[i]));
    res.value += half * s_hi;
    res.error += half * std::abs(s_hi - s_lo);
  }
  res.panels = n_panels;
  return res;
}

}  // namespace charxi
