#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "charxi/lfun.hpp"

using namespace charxi;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCatalan = 0.915965594177219015054603514932384110774;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

LContext ctx_of(int q, int n) { return LContext(conrey_character(q, n)); }

// Repeated averaging of consecutive partial sums (Euler transform of an
// alternating series).
double euler_accelerated(const std::vector<double>& partial) {
  std::vector<double> p = partial;
  while (p.size() > 1) {
    std::vector<double> n(p.size() - 1);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) n[i] = 0.5 * (p[i] + p[i + 1]);
    p = n;
  }
  return p[0];
}

// Winding number of L(.,chi) around the rectangle [x0,x1] x [y0,y1], tracked
// with adaptive steps so that each increment of arg stays below pi/8.
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
      if (std::abs(d) > kPi / 8.0 && h > 1e-9) {
        h *= 0.5;
        continue;
      }
      winding += d;
      prev = cur;
      u = u1;
      h = std::min(0.02, 2.0 * h);
    }
  }
  return static_cast<int>(std::lround(winding / (2.0 * kPi)));
}

// L'(s) = (1/2 pi i) oint L(w)/(w-s)^2 dw on a circle of radius r, trapezoid in angle.
cplx cauchy_derivative(cplx s, const LContext& ctx, double r = 0.25, int n = 128) {
  cplx acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const cplx e = std::polar(1.0, 2.0 * kPi * k / n);
    acc += dirichlet_l(s + r * e, ctx) / e;
  }
  return acc / (r * n);
}

}  // namespace

TEST(LContext, EpsilonHasUnitModulus) {
  for (int q : {3, 4, 5, 7, 8, 11}) {
    for (const auto& chi : enumerate_primitive(q)) {
      LContext ctx(chi);
      EXPECT_NEAR(std::abs(ctx.epsilon), 1.0, 1e-10);
      const cplx ib = chi.is_even() ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
      EXPECT_EQ(ctx.epsilon, ib * std::sqrt(double(q)) / ctx.gauss);
    }
  }
  EXPECT_THROW(LContext(conrey_character(8, 7)), precondition_error);
  EXPECT_THROW(LContext(conrey_character(5, 1)), precondition_error);
}

TEST(DirichletL, ModFourSpecialValues) {
  auto ctx = ctx_of(4, 3);
  // Leibniz series: partial sums of 1 - 1/3 + 1/5 - ...
  std::vector<double> p1, p2;
  double s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < 40; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s1 += sign / (2 * k + 1);
    s2 += sign / ((2.0 * k + 1) * (2.0 * k + 1));
    p1.push_back(s1);
    p2.push_back(s2);
  }
  const double leibniz = euler_accelerated(p1);
  const double catalan = euler_accelerated(p2);
  EXPECT_NEAR(leibniz, kPi / 4.0, 1e-10);
  EXPECT_NEAR(catalan, kCatalan, 1e-10);
  EXPECT_LT(rel(dirichlet_l(1.0, ctx), cplx(leibniz, 0.0)), 1e-9);
  EXPECT_LT(rel(dirichlet_l(2.0, ctx), cplx(catalan, 0.0)), 1e-9);
  // zeta(0,a) = 1/2 - a: (1/2-1/4) - (1/2-3/4)
  EXPECT_LT(std::abs(dirichlet_l(0.0, ctx) - 0.5), 1e-12);
}

TEST(DirichletL, MatchesDirectSumForLargeRealPart) {
  for (int q : {5, 7}) {
    for (const auto& chi : enumerate_primitive(q)) {
      LContext ctx(chi);
      const cplx s(3.0, 4.0);
      cplx direct{0.0, 0.0};
      for (int n = 20000; n >= 1; --n) direct += chi(n) * std::exp(-s * std::log(double(n)));
      EXPECT_LT(rel(dirichlet_l(s, ctx), direct), 1e-9);
    }
  }
}

TEST(DirichletL, SmallEulerMaclaurinSettingsStillAgree) {
  auto chi = conrey_character(7, 3);
  LContext a(chi), b(chi, EulerMaclaurinSettings{80, 25});
  for (cplx s : {cplx(0.5, 59.0), cplx(-0.4, -25.0), cplx(1.0, 0.0), cplx(1.4, 11.0)})
    EXPECT_LT(rel(dirichlet_l(s, a), dirichlet_l(s, b)), 1e-10);
}

TEST(DirichletL, GrowthBoundOnCriticalLine) {
  for (int q : {3, 4, 5, 7}) {
    for (const auto& chi : enumerate_primitive(q)) {
      LContext ctx(chi);
      for (double t = 2.0; t <= 60.0; t += 0.5) {
        const double bound = 10.0 * std::pow(q, 1.6) * std::pow(t, 1.6);
        EXPECT_LE(std::abs(dirichlet_l(cplx(0.5, t), ctx)), bound);
      }
    }
  }
}

TEST(Xi, FunctionalEquationAtSampleValue) {
  for (const auto& chi : enumerate_primitive(5)) {
    LContext ctx(chi);
    LContext bar = ctx.conjugate_context();
    const cplx s(0.3, 7.0);
    const cplx lhs = xi_completed(1.0 - s, bar);
    const cplx rhs = ctx.epsilon * xi_completed(s, ctx);
    EXPECT_LT(std::abs(lhs - rhs), 1e-9 * std::abs(xi_completed(s, ctx)));
  }
}

TEST(Xi, FunctionalEquationSuite) {
  for (int q : {3, 4, 5, 7, 8, 11}) {
    for (const auto& chi : enumerate_primitive(q)) {
      LContext ctx(chi);
      LContext bar = ctx.conjugate_context();
      double worst = 0.0;
      for (double sigma = -0.4; sigma <= 1.4001; sigma += 0.2)
        for (double t = -25.0; t <= 25.0; t += 2.5) {
          const cplx s(sigma, t);
          const cplx x = xi_completed(s, ctx);
          worst = std::max(worst, std::abs(xi_completed(1.0 - s, bar) - ctx.epsilon * x) / (1.0 + std::abs(x)));
        }
      EXPECT_LT(worst, 1e-8) << chi.label();
    }
  }
}

TEST(Xi, RealAtCentreForRealEvenCharacter) {
  auto ctx = ctx_of(5, 4);
  const cplx x = xi_completed(0.5, ctx);
  EXPECT_LT(std::abs(x.imag()), 1e-10 * std::abs(x));
}

TEST(Xi, MatchesGammaTimesLFactorization) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-0.4, 1.4), im(-30.0, 30.0);
  auto ctx = ctx_of(7, 3);
  for (int i = 0; i < 10; ++i) {
    const cplx s(re(rng), im(rng));
    const cplx half = 0.5 * (s + double(ctx.b()));
    const cplx direct = std::pow(kPi / 7.0, -half) * gamma(half) * dirichlet_l(s, ctx);
    EXPECT_LT(rel(xi_completed(s, ctx), direct), 1e-12);
  }
}

TEST(Xi, TrivialZeroLimitIsContinuous) {
  // symmetric average around the removable point, first-order terms cancel
  auto around = [](cplx s, const LContext& c) {
    const double d = 1e-4;
    return 0.5 * (xi_completed(s + d, c) + xi_completed(s - d, c));
  };
  auto even = ctx_of(5, 4);  // s = 0 is a Gamma pole and a trivial zero
  EXPECT_LT(rel(xi_completed(0.0, even), around(0.0, even)), 1e-6);
  auto odd = ctx_of(3, 2);
  EXPECT_LT(rel(xi_completed(-1.0, odd), around(-1.0, odd)), 1e-6);
}

TEST(BigXi, ConjugationLaw) {
  for (int q : {3, 5}) {
    for (const auto& chi : enumerate_primitive(q)) {
      LContext ctx(chi);
      for (double t : {1.0, 5.0, 12.0}) {
        const cplx x = big_xi(t, ctx);
        EXPECT_LT(std::abs(std::conj(x) - ctx.epsilon * x), 1e-10 * std::abs(x));
      }
    }
  }
}

TEST(BigXi, ProductSymmetry) {
  for (const auto& chi : enumerate_primitive(5)) {
    LContext ctx(chi);
    LContext bar = ctx.conjugate_context();
    const cplx iz2 = cplx(0.0, 1.0) * cplx(0.25, 0.3) / 2.0;
    for (double t : {0.7, 4.0, 13.0}) {
      const cplx lhs = big_xi(-t + iz2, bar) * big_xi(-t - iz2, ctx);
      const cplx rhs = big_xi(t + iz2, bar) * big_xi(t - iz2, ctx);
      EXPECT_LT(rel(lhs, rhs), 1e-10);
    }
    EXPECT_EQ(big_xi(0.0, ctx), xi_completed(0.5, ctx));
  }
}

TEST(HardyZ, RealOnGridAndSignChanges) {
  auto ctx = ctx_of(3, 2);
  int changes = 0;
  double prev = hardy_z(0.0, ctx);
  EXPECT_NEAR(std::abs(prev), std::abs(xi_completed(0.5, ctx)), 1e-14);
  for (double t = 0.05; t <= 30.0; t += 0.05) {
    const double z = hardy_z(t, ctx);
    if ((z < 0.0) != (prev < 0.0)) ++changes;
    prev = z;
  }
  EXPECT_GE(changes, 4);
  for (int q : {4, 5, 7})
    for (const auto& chi : enumerate_primitive(q)) {
      LContext c(chi);
      for (double t = 0.0; t <= 30.0; t += 0.37) EXPECT_NO_THROW(hardy_z(t, c));
    }
}

TEST(Zeros, CountMatchesArgumentPrinciple) {
  auto ctx = ctx_of(3, 2);
  const auto zeros = find_zeros(ctx, 10.0);
  EXPECT_EQ(static_cast<int>(zeros.size()), argument_principle_count(ctx, 0.0, 1.0, 0.0, 10.0));
  EXPECT_GE(zeros.size(), 1u);
  EXPECT_NEAR(zeros.front().ordinate, 8.03973716, 1e-7);
}

TEST(Zeros, RefinedRecordsVanish) {
  for (auto [q, n] : {std::pair{3, 2}, std::pair{5, 2}, std::pair{4, 3}}) {
    auto ctx = ctx_of(q, n);
    for (const auto& r : find_zeros(ctx, 30.0)) {
      EXPECT_LT(std::abs(dirichlet_l(r.rho, ctx)), 1e-8);
      EXPECT_GT(r.ordinate, 0.0);
      EXPECT_EQ(r.rho, cplx(0.5, r.ordinate));
    }
  }
}

TEST(Zeros, SortedAndSeparatedModFour) {
  auto ctx = ctx_of(4, 3);
  const auto zeros = find_zeros(ctx, 15.0);
  ASSERT_GE(zeros.size(), 2u);
  for (std::size_t i = 1; i < zeros.size(); ++i) EXPECT_GT(zeros[i].ordinate - zeros[i - 1].ordinate, 1e-6);
  EXPECT_THROW(find_zeros(ctx, 150.0), precondition_error);
}

TEST(Zeros, LowerHalfPlaneZerosComeFromConjugateCharacter) {
  auto ctx = ctx_of(5, 2);
  auto bar = ctx.conjugate_context();
  for (const auto& r : find_zeros(bar, 25.0)) EXPECT_LT(std::abs(dirichlet_l(std::conj(r.rho), ctx)), 1e-8);
  // and the two ordinate lists differ for a complex character
  const auto up = find_zeros(ctx, 25.0);
  const auto dn = find_zeros(bar, 25.0);
  ASSERT_FALSE(up.empty());
  ASSERT_FALSE(dn.empty());
  EXPECT_GT(std::abs(up.front().ordinate - dn.front().ordinate), 1e-3);
}

TEST(LDerivative, AgreesWithCauchyIntegral) {
  for (auto [q, n] : {std::pair{3, 2}, std::pair{5, 2}, std::pair{7, 3}}) {
    auto ctx = ctx_of(q, n);
    for (cplx s : {cplx(0.5, 8.0), cplx(-1.0, 0.0), cplx(0.0, 0.0), cplx(1.3, -20.0)}) {
      const cplx oracle = cauchy_derivative(s, ctx);
      EXPECT_LT(rel(l_derivative(s, ctx), oracle), 1e-7);
    }
  }
}

TEST(LDerivative, ModFourAtMinusOneIsTwiceCatalanOverPi) {
  // k = 3 instance of the derivative relation: L'(-1,chi_4) = 2 G(chi) L(2,chi) / (4 pi i) = 2 Catalan / pi
  auto ctx = ctx_of(4, 3);
  EXPECT_LT(rel(l_derivative(-1.0, ctx), cplx(2.0 * kCatalan / kPi, 0.0)), 1e-7);
}

TEST(LDerivative, CentralDifferenceIsSecondOrder) {
  auto ctx = ctx_of(5, 2);
  const cplx s(0.5, 6.0);
  const cplx exact = cauchy_derivative(s, ctx);
  auto cd = [&](double h) { return std::abs((dirichlet_l(s + h, ctx) - dirichlet_l(s - h, ctx)) / (2.0 * h) - exact); };
  const double e1 = cd(0.02), e2 = cd(0.01);
  EXPECT_NEAR(e1 / e2, 4.0, 0.2);
}

TEST(GeneralizedBernoulli, MatchesLValueFormulas) {
  // standard B_j(chibar) equals 2(-1)^{j-1} [i] G(chibar) j! / (q (2pi/q)^j) L(j,chi) (even j / odd j)
  for (int q : {3, 4, 5, 7, 8}) {
    for (const auto& chi : enumerate_primitive(q)) {
      LContext ctx(chi);
      const std::vector<int> js = chi.is_even() ? std::vector<int>{2, 4} : std::vector<int>{1, 3};
      for (int j : js) {
        const int jj = (j + 1) / 2;
        const double sign = (jj % 2 == 1) ? 1.0 : -1.0;
        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;
        cplx f = 2.0 * sign * ctx.gauss_bar * fact / (q * std::pow(2.0 * kPi / q, j)) * dirichlet_l(double(j), ctx);
        if (!chi.is_even()) f *= cplx(0.0, 1.0);
        EXPECT_LT(rel(ctx.bernoulli_bar[j], f), 1e-9) << chi.label() << " j=" << j;
      }
    }
  }
}

TEST(CharPsi, SmallArgumentLimit) {
  for (auto [q, n] : {std::pair{3, 2}, std::pair{5, 2}, std::pair{5, 4}}) {
    auto ctx = ctx_of(q, n);
    EXPECT_LT(std::abs(char_psi(1e-12, ctx) + dirichlet_l(1.0, ctx)), 1e-10);
  }
  EXPECT_THROW(char_psi(0.0, ctx_of(3, 2)), domain_error);
}

TEST(CharPsi, AgreesWithBlockSmoothedPartialSums) {
  auto ctx = ctx_of(5, 4);
  const double a = 3.7;
  // block sums over full periods are absolutely summable; Richardson in the block count
  auto partial = [&](int blocks) {
    cplx s{0.0, 0.0};
    for (int n = 5 * blocks; n >= 1; --n) s -= ctx.chi(n) / (n + a);
    return s;
  };
  const cplx p1 = partial(100000), p2 = partial(200000);
  const cplx oracle = (4.0 * p2 - p1) / 3.0;  // even character: block tail decays like K^{-2}
  EXPECT_LT(std::abs(char_psi(a, ctx) - oracle), 1e-8);
}

TEST(CharPsi, AsymptoticExpansion) {
  for (auto [q, n] : {std::pair{3, 2}, std::pair{5, 2}, std::pair{5, 4}, std::pair{7, 3}}) {
    auto ctx = ctx_of(q, n);
    const double a = 50.0;
    const cplx exact = char_psi(a, ctx);
    EXPECT_EQ(psi_asymptotic(a, ctx, 1), -dirichlet_l(0.0, ctx) / a);
    double prev = std::abs(exact - psi_asymptotic(a, ctx, 1));
    for (int J = 2; J <= 4; ++J) {
      const double err = std::abs(exact - psi_asymptotic(a, ctx, J));
      // odd-j (even chi) or even-j (odd chi) steps add nothing
      const bool adds = ctx.bernoulli[J] != cplx(0.0, 0.0);
      if (adds) EXPECT_LT(err, prev) << ctx.chi.label() << " J=" << J;
      prev = err;
    }
    EXPECT_THROW(psi_asymptotic(5.0, ctx, 2), precondition_error);
  }
}

TEST(CharHurwitz, ReducesToLAtZeroShift) {
  auto ctx = ctx_of(7, 3);
  EXPECT_LT(rel(char_hurwitz_l(2.3, 0.0, ctx), dirichlet_l(2.3, ctx)), 1e-12);
}

TEST(CharHurwitz, DirectSumOracle) {
  auto ctx = ctx_of(3, 2);
  const double a = 1.5;
  cplx s{0.0, 0.0};
  for (int n = 3000000; n >= 1; --n) s += ctx.chi(n) / ((n + a) * (n + a));
  EXPECT_LT(rel(char_hurwitz_l(2.0, a, ctx), s), 1e-9);
  for (const auto& chi : enumerate_primitive(5)) {
    LContext c(chi);
    cplx d{0.0, 0.0};
    const cplx z(3.0, 2.0);
    for (int n = 20000; n >= 1; --n) d += chi(n) * std::exp(-z * std::log(n + 0.8));
    EXPECT_LT(rel(char_hurwitz_l(z, 0.8, c), d), 1e-9);
  }
}

TEST(CharHurwitz, LeadingAsymptoticTerm) {
  auto ctx = ctx_of(3, 2);
  const double a = 40.0;
  const cplx z = 1.5;
  const cplx exact = char_hurwitz_l(z, a, ctx);
  const cplx lead = ctx.chi_minus_one() * ctx.bernoulli[1] * std::pow(a, -z);
  EXPECT_LT(std::abs(hurwitz_l_asymptotic(z, a, ctx, 1) - lead), 1e-15 * std::abs(lead));
  const cplx j3 = hurwitz_l_asymptotic(z, a, ctx, 3) - hurwitz_l_asymptotic(z, a, ctx, 2);
  EXPECT_LT(std::abs(exact - lead), std::abs(j3));
  const cplx exact50 = char_hurwitz_l(z, 50.0, ctx);
  double prev = std::abs(exact50);
  for (int J : {1, 3, 5}) {  // B_2 = B_4 = 0 for this odd character
    const double err = std::abs(exact50 - hurwitz_l_asymptotic(z, 50.0, ctx, J));
    EXPECT_LT(err, 1e-2 * prev) << "J=" << J;
    prev = err;
  }
}
