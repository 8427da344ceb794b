#pragma once

// Classical Bernoulli numbers and polynomials.

#include <array>
#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

#include "charxi/errors.hpp"

namespace charxi {

inline constexpr int kMaxBernoulliIndex = 60;

namespace detail {

// B_0..B_60 from sum_{k=0}^{n} C(n+1,k) B_k = 0 in exact rational arithmetic,
// rounded once to binary64. Convention B_1 = -1/2.
inline std::array<double, kMaxBernoulliIndex + 1> make_bernoulli_table() {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  std::array<cpp_rational, kMaxBernoulliIndex + 1> b;
  b[0] = 1;
  for (int n = 1; n <= kMaxBernoulliIndex; ++n) {
    cpp_rational acc = 0;
    cpp_int binom = 1;  // C(n+1, k)
    for (int k = 0; k < n; ++k) {
      acc += cpp_rational(binom) * b[k];
      binom = binom * (n + 1 - k) / (k + 1);
    }
    b[n] = -acc / (n + 1);
  }
  std::array<double, kMaxBernoulliIndex + 1> out{};
  for (int n = 0; n <= kMaxBernoulliIndex; ++n) out[n] = static_cast<double>(b[n]);
  return out;
}

}  // namespace detail

inline const std::array<double, kMaxBernoulliIndex + 1>& bernoulli_table() {
  static const auto table = detail::make_bernoulli_table();
  return table;
}

inline double bernoulli_number(int n) {
  if (n < 0 || n > kMaxBernoulliIndex) throw precondition_error("bernoulli_number: index out of range");
  return bernoulli_table()[static_cast<std::size_t>(n)];
}

// B_n(x) = sum_k C(n,k) B_k x^{n-k}, Horner in x.
inline double bernoulli_polynomial(int n, double x) {
  if (n < 0 || n > kMaxBernoulliIndex) throw precondition_error("bernoulli_polynomial: index out of range");
  const auto& b = bernoulli_table();
  // coefficient of x^{n-k} is C(n,k) B_k; accumulate from k = 0 (highest power).
  double binom = 1.0;
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    acc = acc * x + binom * b[static_cast<std::size_t>(k)];
    binom = binom * (n - k) / (k + 1);
  }
  return acc;
}

}  // namespace charxi
