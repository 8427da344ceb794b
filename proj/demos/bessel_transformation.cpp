// Four evaluations of the Bessel series against the Xi integral for one
// character, printed for a few alpha.
//
//   bessel_transformation [q conrey z_re]

#include <cstdio>
#include <cstdlib>

#include "charxi/identities.hpp"

int main(int argc, char** argv) {
  const int q = argc > 2 ? std::atoi(argv[1]) : 5;
  const int n = argc > 2 ? std::atoi(argv[2]) : 2;
  const double z = argc > 3 ? std::atof(argv[3]) : 0.3;
  const charxi::LContext ctx(charxi::conrey_character(q, n));
  for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
    const auto c = charxi::check_koshfec(ctx, z, alpha);
    std::printf("alpha = %-4g rel. residual %.2e\n", alpha, c.rel_residual);
    for (const auto& s : c.sides) std::printf("  %-20s %+.15f %+.15fi\n", s.label.c_str(), s.value.real(), s.value.imag());
  }
}
