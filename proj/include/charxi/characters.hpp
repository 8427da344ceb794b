#pragma once

// Dirichlet characters in the Conrey labeling, Gauss sums and generalized
// Bernoulli numbers.

#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "charxi/bernoulli.hpp"
#include "charxi/errors.hpp"

namespace charxi {

using cplx = std::complex<double>;

enum class Parity { even = 0, odd = 1 };

/// A Dirichlet character mod q stored as its full value table.
///
/// values[m] holds chi(m mod q); exponent[m] holds k with chi(m) = e(k/phi(q))
/// (-1 for m not coprime to q). Immutable after construction.
struct DirichletCharacter {
  int modulus = 0;
  int conrey_index = 0;
  int phi = 0;
  int order = 1;
  int parity_bit = 0;  // b = 0 iff chi(-1) = 1
  bool primitive = false;
  std::vector<cplx> values;
  std::vector<std::int64_t> exponent;

  cplx operator()(std::int64_t m) const {
    std::int64_t r = m % modulus;
    if (r < 0) r += modulus;
    return values[static_cast<std::size_t>(r)];
  }
  Parity parity() const { return parity_bit == 0 ? Parity::even : Parity::odd; }
  bool is_even() const { return parity_bit == 0; }
  bool is_real() const {
    for (const auto& v : values)
      if (v.imag() != 0.0) return false;
    return true;
  }
  bool is_principal() const {
    for (std::size_t m = 0; m < exponent.size(); ++m)
      if (exponent[m] > 0) return false;
    return true;
  }
  std::string label() const { return std::to_string(modulus) + "." + std::to_string(conrey_index); }
};

namespace detail {

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

inline std::vector<std::pair<int, int>> factorize(int n) {
  std::vector<std::pair<int, int>> f;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

inline int euler_phi(int n) {
  int r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

inline bool is_primitive_root(std::int64_t g, std::int64_t m, std::int64_t phi_m) {
  if (std::gcd(g, m) != 1) return false;
  for (auto [p, e] : factorize(static_cast<int>(phi_m)))
    if (powmod(g, phi_m / p, m) == 1) return false;
  return true;
}

// Least g that is a primitive root modulo every power of the odd prime p.
inline int conrey_generator(int p) {
  const std::int64_t p2 = std::int64_t{p} * p;
  for (int g = 2; g < p2; ++g)
    if (is_primitive_root(g, p2, std::int64_t{p} * (p - 1))) return g;
  throw consistency_error("no primitive root found");
}

// Exact unit-circle value e(k/d) with quarter turns snapped.
inline cplx root_of_unity(std::int64_t k, std::int64_t d) {
  k %= d;
  if (k < 0) k += d;
  const std::int64_t g = std::gcd(k, d);
  k /= g;
  d /= g;
  if (d == 1) return {1.0, 0.0};
  if (d == 2) return {-1.0, 0.0};
  if (d == 4) return k == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
  return {std::cos(ang), std::sin(ang)};
}

// Discrete-log data for one prime-power component of (Z/q)^*.
struct ConreyComponent {
  int p = 0;
  int e = 0;
  int pe = 0;
  int phi_pe = 0;
  // odd p: log base g; p = 2: log base 5 and sign epsilon
  std::vector<int> log;
  std::vector<int> eps;  // p = 2 only: 1 for +1, -1 for -1
};

inline ConreyComponent make_component(int p, int e) {
  ConreyComponent c;
  c.p = p;
  c.e = e;
  c.pe = 1;
  for (int i = 0; i < e; ++i) c.pe *= p;
  c.phi_pe = c.pe / p * (p - 1);
  c.log.assign(static_cast<std::size_t>(c.pe), -1);
  if (p != 2) {
    const int g = conrey_generator(p);
    std::int64_t x = 1;
    for (int k = 0; k < c.phi_pe; ++k) {
      c.log[static_cast<std::size_t>(x)] = k;
      x = x * g % c.pe;
    }
  } else {
    c.eps.assign(static_cast<std::size_t>(c.pe), 0);
    if (e == 1) {
      c.log[1] = 0;
      c.eps[1] = 1;
    } else {
      const int half = e >= 3 ? c.pe / 4 : 1;  // order of 5 mod 2^e
      std::int64_t x = 1;
      for (int k = 0; k < half; ++k) {
        c.log[static_cast<std::size_t>(x)] = k;
        c.eps[static_cast<std::size_t>(x)] = 1;
        const auto neg = static_cast<std::size_t>((c.pe - x) % c.pe);
        c.log[neg] = k;
        c.eps[neg] = -1;
        x = x * 5 % c.pe;
      }
    }
  }
  return c;
}

// Numerator k (mod phi(q)) of chi_n(m) = e(k/phi(q)).
inline std::int64_t conrey_exponent(const std::vector<ConreyComponent>& comps, int phi_q, int n, int m) {
  std::int64_t k = 0;
  for (const auto& c : comps) {
    const auto nn = static_cast<std::size_t>(n % c.pe);
    const auto mm = static_cast<std::size_t>(m % c.pe);
    const std::int64_t scale = phi_q / c.phi_pe;
    if (c.p != 2) {
      k += std::int64_t{c.log[nn]} * c.log[mm] * scale;
    } else if (c.e >= 2) {
      if (c.eps[nn] < 0 && c.eps[mm] < 0) k += phi_q / 2;
      if (c.e >= 3) k += std::int64_t{c.log[nn]} * c.log[mm] * (phi_q / (c.pe / 4));
    }
    k %= phi_q;
  }
  return k;
}

inline bool decide_primitive(const DirichletCharacter& chi) {
  const int q = chi.modulus;
  for (int d = 1; d < q; ++d) {
    if (q % d != 0) continue;
    bool induced = true;
    for (int m = 1; m < q && induced; ++m) {
      if (std::gcd(m, q) != 1 || m % d != 1 % d) continue;
      if (chi.exponent[static_cast<std::size_t>(m)] != 0) induced = false;
    }
    if (induced) return false;
  }
  return true;
}

}  // namespace detail

/// The Conrey character chi_q(n, .).
inline DirichletCharacter conrey_character(int q, int n) {
  if (q < 3) throw unsupported_modulus_error("conrey_character: modulus must be >= 3 (no primitive non-principal character for q = 1, 2)");
  if (n < 1 || std::gcd(n, q) != 1) throw precondition_error("conrey_character: index must be coprime to the modulus");
  n %= q;
  if (n == 0) n = q;  // unreachable for q >= 3 with gcd 1, kept for q | n safety

  std::vector<detail::ConreyComponent> comps;
  for (auto [p, e] : detail::factorize(q)) comps.push_back(detail::make_component(p, e));

  DirichletCharacter chi;
  chi.modulus = q;
  chi.conrey_index = n;
  chi.phi = detail::euler_phi(q);
  chi.values.assign(static_cast<std::size_t>(q), cplx{0.0, 0.0});
  chi.exponent.assign(static_cast<std::size_t>(q), -1);
  std::int64_t order = 1;
  for (int m = 1; m < q; ++m) {
    if (std::gcd(m, q) != 1) continue;
    const std::int64_t k = detail::conrey_exponent(comps, chi.phi, n, m);
    chi.exponent[static_cast<std::size_t>(m)] = k;
    chi.values[static_cast<std::size_t>(m)] = detail::root_of_unity(k, chi.phi);
    order = std::lcm(order, chi.phi / std::gcd(k, std::int64_t{chi.phi}));
  }
  chi.order = static_cast<int>(order);
  chi.parity_bit = chi.values[static_cast<std::size_t>(q - 1)].real() > 0.0 ? 0 : 1;
  chi.primitive = detail::decide_primitive(chi);
  return chi;
}

/// All primitive non-principal characters mod q ordered by Conrey index.
inline std::vector<DirichletCharacter> enumerate_primitive(int q) {
  if (q < 3) throw unsupported_modulus_error("enumerate_primitive: modulus must be >= 3");
  std::vector<DirichletCharacter> out;
  for (int n = 2; n < q; ++n) {
    if (std::gcd(n, q) != 1) continue;
    auto chi = conrey_character(q, n);
    if (chi.primitive && !chi.is_principal()) out.push_back(std::move(chi));
  }
  return out;
}

inline int inverse_mod(int n, int q) {
  for (int k = 1; k < q; ++k)
    if (static_cast<std::int64_t>(k) * n % q == 1) return k;
  throw precondition_error("inverse_mod: not invertible");
}

/// Value-wise complex conjugate; Conrey index n maps to n^{-1} mod q.
inline DirichletCharacter conjugate(const DirichletCharacter& chi) {
  DirichletCharacter c = chi;
  c.conrey_index = inverse_mod(chi.conrey_index, chi.modulus);
  for (std::size_t m = 0; m < c.values.size(); ++m) {
    c.values[m] = std::conj(c.values[m]);
    if (c.exponent[m] > 0) c.exponent[m] = c.phi - c.exponent[m];
  }
  return c;
}

/// G(chi) = sum_{m=1}^{q} chi(m) e^{2 pi i m / q}.
inline cplx gauss_sum(const DirichletCharacter& chi) {
  if (!chi.primitive) throw precondition_error("gauss_sum: character must be primitive");
  cplx acc{0.0, 0.0};
  for (int m = 1; m < chi.modulus; ++m) acc += chi(m) * detail::root_of_unity(m, chi.modulus);
  return acc;
}

/// B_j(chi) = q^{j-1} sum_{a=1}^{q} chi(a) B_j(a/q).
inline cplx generalized_bernoulli(const DirichletCharacter& chi, int j) {
  if (j < 1) throw precondition_error("generalized_bernoulli: j must be >= 1");
  const int q = chi.modulus;
  cplx acc{0.0, 0.0};
  for (int a = 1; a <= q; ++a) acc += chi(a) * bernoulli_polynomial(j, static_cast<double>(a) / q);
  return acc * std::pow(static_cast<double>(q), j - 1);
}

struct GeneralizedBernoulliTable {
  int modulus = 0;
  int conrey_index = 0;
  std::vector<cplx> values;  // values[j], j = 0 unused

  cplx operator[](int j) const { return values.at(static_cast<std::size_t>(j)); }
  int max_index() const { return static_cast<int>(values.size()) - 1; }
};

inline GeneralizedBernoulliTable make_bernoulli_table(const DirichletCharacter& chi, int max_j) {
  GeneralizedBernoulliTable t;
  t.modulus = chi.modulus;
  t.conrey_index = chi.conrey_index;
  t.values.assign(static_cast<std::size_t>(max_j + 1), cplx{0.0, 0.0});
  for (int j = 1; j <= max_j; ++j) {
    // parity kills half the table exactly
    if ((j % 2 == 1) == chi.is_even()) continue;
    t.values[static_cast<std::size_t>(j)] = generalized_bernoulli(chi, j);
  }
  return t;
}

}  // namespace charxi
