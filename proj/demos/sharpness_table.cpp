// Prints how the Poincare quotient of the sharp family u_{a,R} approaches
// ((n-1)/p)^q as ln(R/a) grows, next to the analytic upper bound.

#include <cstdio>

#include "hypls/hypls.hpp"

int main() {
  using namespace hypls;
  const Dimension n(4);
  const LorentzIndex idx(4.0, 3.0);
  const double a = 100.0;
  std::vector<double> grid;
  for (double L = 5.0; L <= 320.0; L *= 2.0) grid.push_back(L);
  const auto s = sharpness_sweep_poincare(n, idx, a, grid);
  std::printf("n=4 p=4 q=3 a=%g epsilon=%.4f target=%.6f\n", a, s.details["epsilon"].get<double>(), s.target);
  std::printf("%8s %14s %14s %14s\n", "ln(R/a)", "ratio", "ratio/target", "bound/target");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::printf("%8.0f %14.6f %14.6f %14.6f\n", grid[i], s.ratios[i], s.ratios[i] / s.target,
                s.details["bound_ratio"][i].get<double>() / s.target);
  }
}
