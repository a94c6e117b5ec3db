// Prints the exact rational coefficients of the singular part at a few integer points.
#include <mzeta/mzeta.hpp>

#include <iostream>

int main() {
  using namespace mzeta;
  for (const IntPoint& a : std::vector<IntPoint>{{1, 1}, {2, 0, 1}, {1, 1, 1}}) {
    auto I = a.index_set();
    IndexSet set(I.begin(), I.end());
    auto r = static_cast<unsigned>(a.depth());
    std::cout << "point (" << detail::join(a.coords) << ")\n";
    for (std::size_t pos = 1; pos < I.size(); ++pos)
      std::cout << "  f_" << I[pos] << " = " << f_rational(set, static_cast<unsigned>(I[pos]), r).str() << "\n";
  }
  std::cout << "stufflings of depth 2 with depth 1: " << enumerate_stufflings(2, 1, false).size() << "\n";
}
