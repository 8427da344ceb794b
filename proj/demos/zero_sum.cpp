// Critical-line zeros of L(s, chi) and the zero-sum identity built on them.
//
//   zero_sum [q conrey tmax alpha]

#include <cstdio>
#include <cstdlib>

#include "charxi/identities.hpp"

int main(int argc, char** argv) {
  const int q = argc > 2 ? std::atoi(argv[1]) : 4;
  const int n = argc > 2 ? std::atoi(argv[2]) : 3;
  const double tmax = argc > 3 ? std::atof(argv[3]) : 40.0;
  const double alpha = argc > 4 ? std::atof(argv[4]) : 1.0;

  const charxi::LContext ctx(charxi::conrey_character(q, n));
  const charxi::LContext bar = ctx.conjugate_context();
  const auto zeros = charxi::find_zeros(ctx, tmax);
  const auto bar_zeros = charxi::find_zeros(bar, tmax);
  std::printf("%zu zeros of L(s, %s) up to height %g\n", zeros.size(), ctx.chi.label().c_str(), tmax);
  for (const auto& z : zeros) std::printf("  %.12f  |L'| = %.6f\n", z.ordinate, std::abs(z.l_prime));

  const auto c = charxi::check_rhl(ctx, alpha, zeros, bar_zeros);
  std::printf("alpha = %g: abs. residual %.2e, last brackets shrinking: %s\n", alpha, c.abs_residual, c.side_condition ? "yes" : "no");
  for (const auto& s : c.sides) std::printf("  %-24s %+.15f %+.15fi\n", s.label.c_str(), s.value.real(), s.value.imag());
}
