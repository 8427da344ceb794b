// Primitive characters mod q with L(1/2), L(1) and the root number.
//
//   l_values [q]

#include <cstdio>
#include <cstdlib>

#include "charxi/lfun.hpp"

int main(int argc, char** argv) {
  const int q = argc > 1 ? std::atoi(argv[1]) : 5;
  for (const auto& chi : charxi::enumerate_primitive(q)) {
    const charxi::LContext ctx(chi);
    const auto half = charxi::dirichlet_l({0.5, 0.0}, ctx);
    const auto one = charxi::dirichlet_l({1.0, 0.0}, ctx);
    std::printf("%-6s %s  L(1/2) = %+.12f%+.12fi  L(1) = %+.12f%+.12fi  eps = %+.6f%+.6fi\n", chi.label().c_str(),
                chi.is_even() ? "even" : "odd ", half.real(), half.imag(), one.real(), one.imag(), ctx.epsilon.real(), ctx.epsilon.imag());
  }
}
