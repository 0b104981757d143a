// Verifies the Poincare inequality, the key estimate and the Hardy inequality
// for a user-supplied piecewise-linear rearrangement u*.

#include <iostream>

#include "hypls/hypls.hpp"

int main() {
  using namespace hypls;
  const Dimension n(4);
  const LorentzIndex idx(4.0, 3.0);
  const auto u = family_piecewise_linear({{0.0, 3.0}, {0.5, 2.0}, {4.0, 0.7}, {12.0, 0.0}});
  const std::vector<VerificationReport> reports = {verify_poincare(u, n, idx), verify_key_estimate(u, n, idx),
                                                   verify_hardy_1d(u, n, idx), verify_maximal(u, idx)};
  for (const auto& r : reports) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "  lhs=" << r.lhs << "  " << sense_name(r.sense)
              << "  rhs=" << r.rhs << "  margin=" << r.margin << "\n";
  }
  write_csv(std::cout, reports);
  return all_pass(reports) ? 0 : 1;
}
