#pragma once

// Series sides of the transformation formulas: Bessel, Hurwitz and psi
// double series, Moebius sums and bracketed sums over zeros.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "charxi/errors.hpp"
#include "charxi/lfun.hpp"
#include "charxi/specfun.hpp"

namespace charxi {

/// A series value with its truncation estimate and the number of exact terms.
struct SeriesValue {
  cplx value{0.0, 0.0};
  double error = 0.0;
  long terms = 0;
};

/// sum_{d|n} chibar^2(d) d^z
inline cplx twisted_divisor(long n, cplx z, const DirichletCharacter& chi) {
  if (n < 1) throw precondition_error("twisted_divisor: n must be positive");
  cplx acc{0.0, 0.0};
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    const cplx c = std::conj(chi(d));
    acc += c * c * std::exp(z * std::log(static_cast<double>(d)));
    const long e = n / d;
    if (e != d) {
      const cplx ce = std::conj(chi(e));
      acc += ce * ce * std::exp(z * std::log(static_cast<double>(e)));
    }
  }
  return acc;
}

/// F(z,alpha,chi) = alpha^{b+1/2} sum chi(n) n^{-z/2+b} sigma(n) K_{-z/2}(2 pi n alpha / q).
inline SeriesValue bessel_side(cplx z, double alpha, const LContext& ctx) {
  if (!(std::abs(z.real()) < 1.0)) throw precondition_error("bessel_side: requires |Re z| < 1");
  if (!(alpha > 0.0)) throw precondition_error("bessel_side: alpha must be positive");
  const int b = ctx.b();
  const double q = ctx.q();
  const cplx nu = -z / 2.0;
  cplx acc{0.0, 0.0};
  double scale = 0.0;
  long n = 1;
  for (;; ++n) {
    const double x = 2.0 * std::numbers::pi * n * alpha / q;
    const cplx c = ctx.chi(n);
    if (c == cplx{0.0, 0.0}) continue;
    const cplx kx = bessel_k(nu, x);
    const cplx term = c * std::exp((static_cast<double>(b) - z / 2.0) * std::log(static_cast<double>(n))) * twisted_divisor(n, z, ctx.chi) * kx;
    acc += term;
    scale = std::max(scale, std::abs(acc));
    // sigma(n) can vanish exactly, so stop on an envelope rather than the term
    const double envelope = std::pow(static_cast<double>(n), b + 1.5 * std::abs(z.real()) + 0.5) * 2.0 * std::abs(kx);
    if (x > 2.0 && envelope < 1e-17 * scale) break;
    if (n > 100000) throw truncation_error("bessel_side: series did not settle");
  }
  return {std::pow(alpha, b + 0.5) * acc, 1e-17 * scale, n};
}

/// T(z,alpha,chi) = alpha^{z/2} q^{z/2} Gamma(z+1) / (2^z pi^{z/2} G(chi))
inline cplx t_factor(cplx z, double alpha, const LContext& ctx) {
  const double q = ctx.q();
  return std::exp(z / 2.0 * std::log(alpha * q / std::numbers::pi) - z * std::log(2.0) + log_gamma(z + 1.0)) / ctx.gauss;
}

namespace detail {

inline constexpr int kTailTerms = 10;
inline constexpr int kTailDoublings = 4;

inline long tail_start(double alpha, int q) { return std::max(8L, static_cast<long>(std::ceil(16.0 * q / alpha))); }

// sum_{n>N} chi(n) n^{-w} = L(w,chi) - sum_{n<=N} chi(n) n^{-w}
inline cplx dirichlet_tail(cplx w, long N, const LContext& ctx) {
  cplx partial{0.0, 0.0};
  for (long n = N; n >= 1; --n) {
    const cplx c = ctx.chi(n);
    if (c != cplx{0.0, 0.0}) partial += c * std::exp(-w * std::log(static_cast<double>(n)));
  }
  return dirichlet_l(w, ctx) - partial;
}

// |sum_{n>N} n^{-w}| bound for Re w > 1.
inline double zeta_tail_bound(double re_w, long N) { return std::pow(static_cast<double>(N), 1.0 - re_w) / (re_w - 1.0); }

}  // namespace detail

/// S(z,alpha,chi) = sum_n chi(n) L(z+1, n alpha, chi).
///
/// Terms n <= N are exact; beyond N the large-argument expansion of
/// L(z+1,a,chi) is summed against chi(n) in closed form through L(z+j,chi).
inline SeriesValue hurwitz_double_series(cplx z, double alpha, const LContext& ctx) {
  if (!(z.real() > -0.9) || !(z.real() < 1.0)) throw precondition_error("hurwitz_double_series: requires -0.9 < Re z < 1");
  if (!(alpha > 0.0)) throw precondition_error("hurwitz_double_series: alpha must be positive");
  const cplx w = z + 1.0;
  long N = detail::tail_start(alpha, ctx.q());
  double target = 0.0;
  for (int attempt = 0; attempt <= detail::kTailDoublings; ++attempt, N *= 2) {
    cplx exact{0.0, 0.0};
    for (long n = N; n >= 1; --n) {
      const cplx c = ctx.chi(n);
      if (c != cplx{0.0, 0.0}) exact += c * char_hurwitz_l(w, n * alpha, ctx);
    }
    cplx tail{0.0, 0.0};
    cplx poch{1.0, 0.0};
    double fact = 1.0;
    for (int j = 1; j <= detail::kTailTerms; ++j) {
      fact *= j;
      const cplx bj = ctx.bernoulli[j];
      if (bj != cplx{0.0, 0.0}) {
        const cplx cj = ctx.chi_minus_one() * bj * poch / fact;
        tail += cj * std::exp(-(z + static_cast<double>(j)) * std::log(alpha)) * detail::dirichlet_tail(z + static_cast<double>(j), N, ctx);
      }
      poch *= w + static_cast<double>(j - 1);
    }
    // first omitted nonzero term as the error estimate
    double err = 0.0;
    for (int j = detail::kTailTerms + 1; j <= detail::kTailTerms + 2; ++j) {
      fact *= j;
      const cplx bj = ctx.bernoulli[j];
      if (bj != cplx{0.0, 0.0}) {
        const double re = z.real() + j;
        err = std::abs(bj * poch / fact) * std::pow(alpha, -re) * detail::zeta_tail_bound(re, N);
        break;
      }
      poch *= w + static_cast<double>(j - 1);
    }
    const cplx total = exact + tail;
    target = 1e-12 * std::max(std::abs(total), 1e-300);
    if (err <= target) return {total, err, N};
  }
  throw truncation_error("hurwitz_double_series: tail estimate above 1e-12 relative");
}

/// sqrt(alpha) [T(z,alpha,chi) S(z,alpha,chi) + T(-z,alpha,chibar) S(-z,alpha,chibar)]
inline SeriesValue hurwitz_side(cplx z, double alpha, const LContext& ctx) {
  const LContext bar = ctx.conjugate_context();
  const SeriesValue a = hurwitz_double_series(z, alpha, ctx);
  const SeriesValue b = hurwitz_double_series(-z, alpha, bar);
  const cplx ta = t_factor(z, alpha, ctx);
  const cplx tb = t_factor(-z, alpha, bar);
  const double r = std::sqrt(alpha);
  return {r * (ta * a.value + tb * b.value), r * (std::abs(ta) * a.error + std::abs(tb) * b.error), std::max(a.terms, b.terms)};
}

/// F(alpha,chi) = -sqrt(alpha) G(chi) sum chibar(n) psi(n alpha, chibar)
///
/// Beyond N the expansion psi(a) ~ -L(0)/a - chi(-1) sum_{j>=2} B_j/(j a^j)
/// is summed in closed form through L(j, chibar).
inline SeriesValue f_sum(double alpha, const LContext& ctx) {
  if (!(alpha > 0.0)) throw precondition_error("f_sum: alpha must be positive");
  const LContext bar = ctx.conjugate_context();
  const cplx l0 = dirichlet_l(cplx{0.0, 0.0}, bar);
  long N = detail::tail_start(alpha, ctx.q());
  for (int attempt = 0; attempt <= detail::kTailDoublings; ++attempt, N *= 2) {
    cplx exact{0.0, 0.0};
    for (long n = N; n >= 1; --n) {
      const cplx c = bar.chi(n);
      if (c != cplx{0.0, 0.0}) exact += c * char_psi(n * alpha, bar);
    }
    cplx tail = -l0 / alpha * detail::dirichlet_tail(1.0, N, bar);
    for (int j = 2; j <= detail::kTailTerms; ++j) {
      const cplx bj = bar.bernoulli[j];
      if (bj == cplx{0.0, 0.0}) continue;
      tail -= bar.chi_minus_one() * bj / (j * std::pow(alpha, j)) * detail::dirichlet_tail(static_cast<double>(j), N, bar);
    }
    double err = 0.0;
    for (int j = detail::kTailTerms + 1; j <= detail::kTailTerms + 2; ++j) {
      const cplx bj = bar.bernoulli[j];
      if (bj != cplx{0.0, 0.0}) {
        err = std::abs(bj) / (j * std::pow(alpha, j)) * detail::zeta_tail_bound(j, N);
        break;
      }
    }
    const cplx pre = -std::sqrt(alpha) * ctx.gauss;
    const cplx total = pre * (exact + tail);
    if (std::abs(pre) * err <= 1e-12 * std::max(std::abs(total), 1e-300)) return {total, std::abs(pre) * err, N};
  }
  throw truncation_error("f_sum: tail estimate above 1e-12 relative");
}

// Moebius function by a linear sieve, grown on demand. Callers hold an
// immutable snapshot, so a concurrent regrowth never invalidates it.
inline constexpr long kMaxMobius = 20000000;

using MobiusTable = std::shared_ptr<const std::vector<std::int8_t>>;

inline MobiusTable mobius_table(long n) {
  static std::mutex mu;
  static MobiusTable table = std::make_shared<const std::vector<std::int8_t>>();
  std::lock_guard<std::mutex> lock(mu);
  if (n > kMaxMobius) throw truncation_error("mobius_table: requested range exceeds the sieve cap");
  if (static_cast<long>(table->size()) > n) return table;
  long size = std::max<long>(n + 1, 2 * static_cast<long>(table->size()));
  size = std::min(size, kMaxMobius + 1);
  std::vector<std::int8_t> mu_v(static_cast<std::size_t>(size), 0);
  std::vector<int> primes;
  std::vector<bool> composite(static_cast<std::size_t>(size), false);
  if (size > 1) mu_v[1] = 1;
  for (long i = 2; i < size; ++i) {
    if (!composite[static_cast<std::size_t>(i)]) {
      primes.push_back(static_cast<int>(i));
      mu_v[static_cast<std::size_t>(i)] = -1;
    }
    for (int p : primes) {
      const long ip = i * p;
      if (ip >= size) break;
      composite[static_cast<std::size_t>(ip)] = true;
      if (i % p == 0) {
        mu_v[static_cast<std::size_t>(ip)] = 0;
        break;
      }
      mu_v[static_cast<std::size_t>(ip)] = static_cast<std::int8_t>(-mu_v[static_cast<std::size_t>(i)]);
    }
  }
  table = std::make_shared<const std::vector<std::int8_t>>(std::move(mu_v));
  return table;
}

inline int mobius(long n) { return (*mobius_table(n))[static_cast<std::size_t>(n)]; }

/// sum chi(n) mu(n) n^{-k} exp(-pi alpha^2 / (q n^2)), k in {1, 2}.
///
/// Written as 1/L(k,chi) + sum chi(n) mu(n) n^{-k} expm1(-x/n^2): the
/// correction series converges absolutely and is cut where its tail
/// x/((k+1) N^{k+1}) drops below 1e-12.
inline SeriesValue mobius_side(double alpha, const LContext& ctx, int k) {
  if (!(alpha > 0.0)) throw precondition_error("mobius_side: alpha must be positive");
  if (k != 1 && k != 2) throw precondition_error("mobius_side: k must be 1 or 2");
  if ((k == 2) != (ctx.b() == 1)) throw precondition_error("mobius_side: k = 2 for odd chi, k = 1 for even chi");
  const double x = std::numbers::pi * alpha * alpha / ctx.q();
  const long N = std::max(10L, static_cast<long>(std::ceil(std::pow(x / ((k + 1) * 1e-12), 1.0 / (k + 1)))));
  const MobiusTable table = mobius_table(N);
  const auto& mu = *table;
  cplx acc{0.0, 0.0};
  for (long n = N; n >= 1; --n) {
    const int m = mu[static_cast<std::size_t>(n)];
    if (m == 0) continue;
    const cplx c = ctx.chi(n);
    if (c == cplx{0.0, 0.0}) continue;
    const double dn = static_cast<double>(n);
    acc += static_cast<double>(m) * c * std::expm1(-x / (dn * dn)) / std::pow(dn, k);
  }
  const double tail = x / ((k + 1) * std::pow(static_cast<double>(N), k + 1));
  return {1.0 / dirichlet_l(static_cast<double>(k), ctx) + acc, tail, N};
}

struct KluyverResult {
  cplx cesaro{0.0, 0.0};         // mean of partial sums S_{qm}, m = 1..N/q
  cplx raw{0.0, 0.0};            // S_N
  cplx block_average{0.0, 0.0};  // mean of S_{N-q+1..N}
  cplx target{0.0, 0.0};         // 1/L(1,chi)
  long n = 0;
};

/// Partial sums of sum chi(n) mu(n)/n smoothed over blocks of length q.
///
/// Full periods of chi are the natural blocks; the Cesaro mean of the
/// block-end partial sums is the reported limit estimate.
inline KluyverResult kluyver(const LContext& ctx, long N) {
  const int q = ctx.q();
  if (N < q) throw precondition_error("kluyver: N must be at least q");
  const MobiusTable table = mobius_table(N);
  const auto& mu = *table;
  KluyverResult r;
  r.n = N;
  r.target = 1.0 / dirichlet_l(1.0, ctx);
  cplx s{0.0, 0.0};
  cplx block_ends{0.0, 0.0};
  long blocks = 0;
  const long last_block = (N / q) * q;
  for (long n = 1; n <= N; ++n) {
    const int m = mu[static_cast<std::size_t>(n)];
    if (m != 0) s += static_cast<double>(m) * ctx.chi(n) / static_cast<double>(n);
    if (n % q == 0 && n <= last_block) {
      block_ends += s;
      ++blocks;
    }
    if (n > N - q) r.block_average += s;
  }
  r.raw = s;
  r.block_average /= static_cast<double>(q);
  r.cesaro = block_ends / static_cast<double>(blocks);
  return r;
}

/// One zero of L(s,chi) in either half-plane.
struct ZeroTerm {
  double gamma = 0.0;  // Im rho
  cplx rho{0.5, 0.0};
  cplx l_prime{0.0, 0.0};
};

/// All zeros of L(s,chi) with |Im rho| <= height from the upper-half records
/// of chi and chibar: rho = conj(rho') for a chibar-zero rho', and
/// L'(rho,chi) = conj(L'(rho',chibar)).
inline std::vector<ZeroTerm> zeros_both_halves(const std::vector<ZeroRecord>& chi_zeros, const std::vector<ZeroRecord>& chibar_zeros) {
  std::vector<ZeroTerm> out;
  for (const auto& r : chi_zeros) out.push_back({r.ordinate, r.rho, r.l_prime});
  for (const auto& r : chibar_zeros) out.push_back({-r.ordinate, std::conj(r.rho), std::conj(r.l_prime)});
  std::stable_sort(out.begin(), out.end(), [](const ZeroTerm& a, const ZeroTerm& b) { return std::abs(a.gamma) < std::abs(b.gamma); });
  return out;
}

inline constexpr double kBracketGap = 0.05;

struct ZeroSum {
  cplx value{0.0, 0.0};
  std::vector<double> bracket_changes;  // |contribution| of each bracket, in order
  double last_bracket = 0.0;
  bool shrinking = false;  // last three bracket contributions strictly decreasing
};

/// Single term Gamma((2-rho)/2) (odd) or Gamma((1-rho)/2) (even) times
/// (pi/q)^{rho/2} alpha^rho / L'(rho,chi).
inline cplx zero_term(const ZeroTerm& z, double alpha, int q, Parity parity) {
  const cplx g = parity == Parity::odd ? (2.0 - z.rho) / 2.0 : (1.0 - z.rho) / 2.0;
  return std::exp(log_gamma(g) + z.rho / 2.0 * std::log(std::numbers::pi / q) + z.rho * std::log(alpha)) / z.l_prime;
}

/// Bracketed sum over zeros ordered by |Im rho|; neighbours closer than
/// kBracketGap in |Im rho| share a bracket.
inline ZeroSum zero_sum_side(double alpha, int q, const std::vector<ZeroTerm>& zeros, Parity parity) {
  if (zeros.empty()) throw precondition_error("zero_sum_side: empty zero list");
  ZeroSum out;
  std::size_t i = 0;
  while (i < zeros.size()) {
    cplx bracket{0.0, 0.0};
    double prev = std::abs(zeros[i].gamma);
    bracket += zero_term(zeros[i], alpha, q, parity);
    std::size_t j = i + 1;
    while (j < zeros.size() && std::abs(zeros[j].gamma) - prev < kBracketGap) {
      prev = std::abs(zeros[j].gamma);
      bracket += zero_term(zeros[j], alpha, q, parity);
      ++j;
    }
    out.value += bracket;
    out.bracket_changes.push_back(std::abs(bracket));
    i = j;
  }
  out.last_bracket = out.bracket_changes.back();
  const auto& c = out.bracket_changes;
  out.shrinking = c.size() >= 3 && c[c.size() - 3] > c[c.size() - 2] && c[c.size() - 2] > c[c.size() - 1];
  return out;
}

}  // namespace charxi
