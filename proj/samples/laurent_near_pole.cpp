// Rebuilds the double zeta function near the pole (1,1) from its Laurent-type expansion.
#include <mzeta/mzeta.hpp>

#include <iostream>

int main() {
  using namespace mzeta;
  PrecisionScope scope(30);
  for (double h : {0.1, 0.05, 0.02}) {
    MVector s{MComplex(MFloat(1 + h)), MComplex(MFloat(1 - h / 3))};
    auto c = check_inverse_exp({1, 1}, s, 12, 6);
    std::cout << "s = (" << format_complex(s[0], 4) << ", " << format_complex(s[1], 4) << ")"
              << "  direct " << format_complex(c.lhs, 12) << "  expansion " << format_complex(c.rhs, 12)
              << "  gap " << format_sci(c.abs_gap) << "\n";
  }
}
