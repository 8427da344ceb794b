#pragma once

// Dirichlet L-functions, completed xi, the character psi and Hurwitz functions,
// their large-argument expansions, and zeros on the critical line.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "charxi/characters.hpp"
#include "charxi/errors.hpp"
#include "charxi/specfun.hpp"

namespace charxi {

inline constexpr int kBernoulliTableSize = 40;

/// Per-character evaluation context: G(chi), epsilon(chi), B_j tables.
struct LContext {
  DirichletCharacter chi;
  DirichletCharacter chibar;
  cplx gauss;
  cplx gauss_bar;
  cplx epsilon;
  GeneralizedBernoulliTable bernoulli;      // standard B_j(chi)
  GeneralizedBernoulliTable bernoulli_bar;  // standard B_j(chibar)
  EulerMaclaurinSettings em;

  explicit LContext(const DirichletCharacter& c, EulerMaclaurinSettings settings = {}) : chi(c), em(settings) {
    if (!chi.primitive || chi.is_principal()) throw precondition_error("LContext: character must be primitive and non-principal");
    em.validate();
    chibar = conjugate(chi);
    gauss = gauss_sum(chi);
    gauss_bar = gauss_sum(chibar);
    const cplx ib = chi.parity_bit == 0 ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
    epsilon = ib * std::sqrt(static_cast<double>(chi.modulus)) / gauss;
    bernoulli = make_bernoulli_table(chi, kBernoulliTableSize);
    bernoulli_bar = make_bernoulli_table(chibar, kBernoulliTableSize);
  }

  LContext conjugate_context() const { return LContext(chibar, em); }
  int q() const { return chi.modulus; }
  int b() const { return chi.parity_bit; }
  double chi_minus_one() const { return chi.parity_bit == 0 ? 1.0 : -1.0; }
};

namespace detail {

inline cplx cpow_real(double base, cplx e) { return std::exp(e * std::log(base)); }

}  // namespace detail

/// L(s,chi) = q^{-s} sum_m chi(m) zeta(s, m/q); the 1/(s-1) parts cancel exactly.
inline cplx dirichlet_l(cplx s, const LContext& ctx) {
  const int q = ctx.q();
  cplx acc{0.0, 0.0};
  for (int m = 1; m < q; ++m) {
    const cplx c = ctx.chi.values[static_cast<std::size_t>(m)];
    if (c == cplx{0.0, 0.0}) continue;
    acc += c * detail::hurwitz_regular(s, static_cast<double>(m) / q, ctx.em);
  }
  return detail::cpow_real(q, -s) * acc;
}

/// L(z,a,chi) = sum_{n>=1} chi(n) (n+a)^{-z}, continued in z; a >= 0.
inline cplx char_hurwitz_l(cplx z, double a, const LContext& ctx) {
  if (!(a >= 0.0)) throw domain_error("char_hurwitz_l: a must be non-negative");
  const int q = ctx.q();
  cplx acc{0.0, 0.0};
  for (int m = 1; m < q; ++m) {
    const cplx c = ctx.chi.values[static_cast<std::size_t>(m)];
    if (c == cplx{0.0, 0.0}) continue;
    acc += c * detail::hurwitz_regular(z, (m + a) / q, ctx.em);
  }
  return detail::cpow_real(q, -z) * acc;
}

/// psi(a,chi) = -sum chi(n)/(n+a) = (1/q) sum_m chi(m) digamma((m+a)/q).
inline cplx char_psi(double a, const LContext& ctx) {
  if (!(a > 0.0)) throw domain_error("char_psi: a must be positive");
  const int q = ctx.q();
  cplx acc{0.0, 0.0};
  for (int m = 1; m < q; ++m) {
    const cplx c = ctx.chi.values[static_cast<std::size_t>(m)];
    if (c == cplx{0.0, 0.0}) continue;
    acc += c * digamma(cplx{(m + a) / q, 0.0});
  }
  return acc / static_cast<double>(q);
}

/// Central difference with one Richardson step: (4 D(h/2) - D(h)) / 3.
inline cplx l_derivative(cplx s, const LContext& ctx, double h = 1e-4) {
  auto d = [&](double hh) { return (dirichlet_l(s + hh, ctx) - dirichlet_l(s - hh, ctx)) / (2.0 * hh); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

/// xi(s,chi) = (pi/q)^{-(s+b)/2} Gamma((s+b)/2) L(s,chi).
///
/// At s = -2k-b the Gamma pole meets a trivial zero; the limit
/// 2(-1)^k/k! (pi/q)^k L'(s) is returned there.
inline cplx xi_completed(cplx s, const LContext& ctx) {
  const int b = ctx.b();
  const cplx half = 0.5 * (s + static_cast<double>(b));
  const double lpq = std::log(std::numbers::pi / ctx.q());
  if (detail::is_nonpositive_integer(half)) {
    const int k = static_cast<int>(-half.real());
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return 2.0 * sign / fact * std::exp(k * lpq) * l_derivative(s, ctx);
  }
  return std::exp(-half * lpq + log_gamma(half)) * dirichlet_l(s, ctx);
}

/// Xi(t,chi) = xi(1/2 + i t, chi), t complex.
inline cplx big_xi(cplx t, const LContext& ctx) { return xi_completed(cplx{0.5, 0.0} + cplx{0.0, 1.0} * t, ctx); }

/// Real rotation sqrt(epsilon) Xi(t,chi) of Xi on the real t axis.
///
/// conj(Xi) = epsilon Xi forces the rotation by the principal root of epsilon
/// (not its inverse) for the product to be real.
inline double hardy_z(double t, const LContext& ctx) {
  const cplx s{0.5, t};
  const cplx half = 0.5 * (s + static_cast<double>(ctx.b()));
  const cplx gfac = std::exp(-half * std::log(std::numbers::pi / ctx.q()) + log_gamma(half));
  const cplx z = std::sqrt(ctx.epsilon) * gfac * dirichlet_l(s, ctx);
  const double floor = 1e-12 * std::abs(gfac);
  if (std::abs(z.imag()) > 1e-9 * std::abs(z) + floor)
    throw consistency_error("hardy_z: rotated Xi is not real at t = " + std::to_string(t));
  return z.real();
}

enum class ZeroSource { computed, ingested };

/// One zero 1/2 + i*ordinate of L(s,chi) above the real axis.
struct ZeroRecord {
  int modulus = 0;
  int conrey_index = 0;
  double ordinate = 0.0;
  cplx rho{0.5, 0.0};
  cplx l_prime{0.0, 0.0};
  ZeroSource source = ZeroSource::computed;
};

inline constexpr double kZeroScanStep = 0.05;
inline constexpr double kZeroMaxHeight = 100.0;

/// Sign changes of hardy_z on (0, t_max], bisected to width 1e-11.
inline std::vector<ZeroRecord> find_zeros(const LContext& ctx, double t_max) {
  if (!(t_max > 0.0) || t_max > kZeroMaxHeight) throw precondition_error("find_zeros: t_max must lie in (0, 100]");
  std::vector<ZeroRecord> out;
  const int steps = static_cast<int>(std::ceil(t_max / kZeroScanStep));
  double t0 = 0.0;
  double z0 = hardy_z(t0, ctx);
  for (int i = 1; i <= steps; ++i) {
    const double t1 = std::min(t_max, i * kZeroScanStep);
    const double z1 = hardy_z(t1, ctx);
    if (z1 == 0.0 || (z0 != 0.0 && (z0 < 0.0) != (z1 < 0.0))) {
      double lo = t0;
      double hi = t1;
      double zlo = z0;
      if (z1 == 0.0) {
        lo = hi = t1;
      }
      while (hi - lo > 1e-11) {
        const double mid = 0.5 * (lo + hi);
        const double zm = hardy_z(mid, ctx);
        if (zm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((zm < 0.0) == (zlo < 0.0)) {
          lo = mid;
          zlo = zm;
        } else {
          hi = mid;
        }
      }
      const double gamma_t = 0.5 * (lo + hi);
      ZeroRecord r;
      r.modulus = ctx.q();
      r.conrey_index = ctx.chi.conrey_index;
      r.ordinate = gamma_t;
      r.rho = cplx{0.5, gamma_t};
      if (std::abs(dirichlet_l(r.rho, ctx)) >= 1e-8)
        throw scan_resolution_error("find_zeros: refinement did not reach |L| < 1e-8", t0, t1);
      r.l_prime = l_derivative(r.rho, ctx);
      out.push_back(r);
    }
    t0 = t1;
    z0 = z1;
  }
  std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) { return a.ordinate < b.ordinate; });
  return out;
}

/// -L(0,chi)/a - chi(-1) sum_{j=2}^{J} B_j/(j a^j), B_j the standard B_j(chi).
inline cplx psi_asymptotic(double a, const LContext& ctx, int J) {
  if (a < 10.0 || J < 1 || J > 8) throw precondition_error("psi_asymptotic: requires a >= 10 and 1 <= J <= 8");
  cplx acc = -dirichlet_l(cplx{0.0, 0.0}, ctx) / a;
  for (int j = 2; j <= J; ++j) acc -= ctx.chi_minus_one() * ctx.bernoulli[j] / (j * std::pow(a, j));
  return acc;
}

/// chi(-1) sum_{j=1}^{J} B_j (z)_{j-1} / (j! a^{z+j-1}).
inline cplx hurwitz_l_asymptotic(cplx z, double a, const LContext& ctx, int J) {
  if (a < 10.0 || J < 1 || J > 8) throw precondition_error("hurwitz_l_asymptotic: requires a >= 10 and 1 <= J <= 8");
  cplx acc{0.0, 0.0};
  cplx poch{1.0, 0.0};
  double fact = 1.0;
  for (int j = 1; j <= J; ++j) {
    fact *= j;
    acc += ctx.bernoulli[j] * poch / fact * detail::cpow_real(a, -(z + static_cast<double>(j - 1)));
    poch *= z + static_cast<double>(j - 1);
  }
  return ctx.chi_minus_one() * acc;
}

}  // namespace charxi
