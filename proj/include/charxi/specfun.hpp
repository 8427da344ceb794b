#pragma once

// Log-gamma, digamma, Hurwitz zeta and modified Bessel K over complex binary64.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "charxi/bernoulli.hpp"
#include "charxi/errors.hpp"

namespace charxi {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

namespace detail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kStirlingMin = 15.0;
inline constexpr int kStirlingTerms = 10;

inline bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// expm1 for complex argument without cancellation in either component.
inline cplx expm1c(cplx w) {
  const double x = w.real();
  const double y = w.imag();
  const double sh = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * sh * sh;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

// expm1(w)/w, equal to 1 at w = 0.
inline cplx expm1_over(cplx w) {
  if (w == cplx{0.0, 0.0}) return {1.0, 0.0};
  if (std::abs(w) < 1e-5) return 1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0));
  return expm1c(w) / w;
}

// log sin(pi s) modulo 2 pi i, stable for large |Im s|.
inline cplx log_sin_pi(cplx s) {
  if (std::abs(s.imag()) < 2.0) return std::log(std::sin(kPi * s));
  const bool upper = s.imag() > 0.0;
  const cplx u = upper ? s : std::conj(s);
  // sin(pi u) = (i/2) e^{-i pi u} (1 - e^{2 pi i u})
  const cplx iu{0.0, 1.0};
  const cplx r = std::log(0.5) + iu * (kPi / 2.0) - iu * kPi * u + std::log(1.0 - std::exp(2.0 * kPi * iu * u));
  return upper ? r : std::conj(r);
}

inline cplx cot_pi(cplx s) {
  const cplx iu{0.0, 1.0};
  if (s.imag() >= 0.0) {
    const cplx w = std::exp(2.0 * kPi * iu * s);
    return -iu * (1.0 + w) / (1.0 - w);
  }
  const cplx w = std::exp(-2.0 * kPi * iu * s);
  return iu * (1.0 + w) / (1.0 - w);
}

inline cplx log_gamma_right(cplx s) {
  cplx shift{0.0, 0.0};
  while (s.real() < kStirlingMin) {
    shift += std::log(s);
    s += 1.0;
  }
  const cplx inv = 1.0 / s;
  const cplx inv2 = inv * inv;
  cplx series{0.0, 0.0};
  cplx p = inv;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    series += bernoulli_number(2 * k) / (2.0 * k * (2.0 * k - 1.0)) * p;
    p *= inv2;
  }
  return (s - 0.5) * std::log(s) - s + 0.5 * std::log(2.0 * kPi) + series - shift;
}

inline cplx digamma_right(cplx s) {
  cplx shift{0.0, 0.0};
  while (s.real() < kStirlingMin) {
    shift += 1.0 / s;
    s += 1.0;
  }
  const cplx inv2 = 1.0 / (s * s);
  cplx series{0.0, 0.0};
  cplx p = inv2;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    series += bernoulli_number(2 * k) / (2.0 * k) * p;
    p *= inv2;
  }
  return std::log(s) - 0.5 / s - series - shift;
}

}  // namespace detail

/// Log-gamma on the standard branch (continuous in the right half-plane).
inline cplx log_gamma(cplx s) {
  if (detail::is_nonpositive_integer(s)) throw domain_error("log_gamma: pole at non-positive integer");
  if (s.real() >= 0.5) return detail::log_gamma_right(s);
  return std::log(detail::kPi) - detail::log_sin_pi(s) - detail::log_gamma_right(1.0 - s);
}

inline cplx gamma(cplx s) { return std::exp(log_gamma(s)); }

inline cplx digamma(cplx s) {
  if (detail::is_nonpositive_integer(s)) throw domain_error("digamma: pole at non-positive integer");
  if (s.real() >= 0.5) return detail::digamma_right(s);
  return detail::digamma_right(1.0 - s) - detail::kPi * detail::cot_pi(s);
}

/// Direct-sum length N and Bernoulli correction count K for Euler-Maclaurin.
struct EulerMaclaurinSettings {
  int shift_terms = 0;  // 0 selects max(12, ceil|Im s|)
  int correction_terms = 12;

  void validate() const {
    if (shift_terms != 0 && shift_terms < 10) throw precondition_error("EulerMaclaurinSettings: N must be >= 10");
    if (correction_terms < 1 || correction_terms > 30) throw precondition_error("EulerMaclaurinSettings: K must be in [1, 30]");
  }
  int shift_for(cplx s) const {
    if (shift_terms != 0) return shift_terms;
    return std::max(12, static_cast<int>(std::ceil(std::abs(s.imag()))));
  }
};

namespace detail {

// Euler-Maclaurin for zeta(s,a) - 1/(s-1), any real a > 0. The pole term
// ((N+a)^{1-s} - 1)/(s-1) is formed through expm1 so that s = 1 is regular.
inline cplx hurwitz_regular(cplx s, double a, const EulerMaclaurinSettings& em) {
  const int n_terms = em.shift_for(s);
  cplx acc{0.0, 0.0};
  for (int n = 0; n < n_terms; ++n) acc += std::exp(-s * std::log(n + a));
  const double na = n_terms + a;
  const double lg = std::log(na);
  const cplx w = (1.0 - s) * lg;
  acc += -lg * expm1_over(w);
  const cplx na_s = std::exp(-s * lg);
  acc += 0.5 * na_s;
  // B_{2k}/(2k)! (s)_{2k-1} (N+a)^{-s-2k+1}
  cplx poch = s;            // (s)_{1}
  cplx pw = na_s / na;      // (N+a)^{-s-1}
  double fact = 2.0;        // (2k)!
  const double inv_na2 = 1.0 / (na * na);
  for (int k = 1; k <= em.correction_terms; ++k) {
    acc += bernoulli_number(2 * k) / fact * poch * pw;
    poch *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    pw *= inv_na2;
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return acc;
}

inline cplx hurwitz_any(cplx s, double a, const EulerMaclaurinSettings& em) {
  if (s == cplx{1.0, 0.0}) throw domain_error("hurwitz_zeta: pole at s = 1");
  return hurwitz_regular(s, a, em) + 1.0 / (s - 1.0);
}

}  // namespace detail

/// zeta(s,a) = sum_{n>=0} (n+a)^{-s} continued in s, a in (0, 2].
inline cplx hurwitz_zeta(cplx s, double a, const EulerMaclaurinSettings& em = {}) {
  if (!(a > 0.0) || a > 2.0) throw domain_error("hurwitz_zeta: a must lie in (0, 2]");
  em.validate();
  return detail::hurwitz_any(s, a, em);
}

/// K_nu(x) = int_0^inf e^{-x cosh u} cosh(nu u) du by the trapezoid rule.
///
/// The integrand is even and analytic in u, so the trapezoid rule on [0, U]
/// converges geometrically; U is fixed where x(cosh U - 1) - |Re nu| U > 46.
inline cplx bessel_k(cplx nu, double x) {
  if (!(x > 0.0)) throw domain_error("bessel_k: x must be positive");
  const double rn = std::abs(nu.real());
  auto excess = [&](double u) {
    const double sh = std::sinh(0.5 * u);
    return 2.0 * x * sh * sh - rn * u;
  };
  double upper = 1.0;
  while (excess(upper) <= 46.0) upper *= 1.25;
  const double h = 0.15 * std::min(1.0, 1.0 / std::sqrt(x));
  const int n = static_cast<int>(std::ceil(upper / h));
  const double step = upper / n;
  cplx acc = 0.5;  // u = 0 endpoint, cosh(0) = 1
  for (int k = 1; k <= n; ++k) {
    const double u = k * step;
    const double sh = std::sinh(0.5 * u);
    acc += std::exp(-2.0 * x * sh * sh) * std::cosh(nu * u);
  }
  return acc * step * std::exp(-x);
}

}  // namespace charxi
