// Prints a table of multiple Stieltjes constants at a few integer points.
#include <mzeta/mzeta.hpp>

#include <iostream>

int main() {
  using namespace mzeta;
  struct Row {
    IntPoint a;
    OrderIndex k;
  };
  std::vector<Row> rows{{{1}, {0}}, {{1}, {1}}, {{0}, {1}}, {{0}, {2}}, {{1, 1}, {0, 0}}, {{0, 0}, {0, 0}},
                        {{2, 0}, {0, 0}}, {{2, 1}, {0, 0}}};
  for (const auto& [a, k] : rows) {
    auto v = stieltjes_constant(a, k, 15, false);
    std::cout << stieltjes_name(a, k, false) << " = " << format_fixed(v.value, 15) << "  (+- "
              << format_sci(v.est_error) << ")\n";
  }
}
