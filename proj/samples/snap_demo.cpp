// Plays lazy subgradient on the 3-simplex against noisy costs and prints the
// turn at which the action snaps to the best vertex for good.

#include <iostream>

#include "subgrad/subgrad.hpp"

int main() {
  using namespace subgrad;
  const Point mean{0.0, 1.0, 1.0};
  CostStream stream(CostModel::sphere_noise(mean, 2.0), RngStream(42, 0));
  LazySubgradient learner(ConvexDomain::simplex(3), 1.0);
  SnapCertifier certifier(mean, 1.0);

  double pseudo = 0.0;
  for (int n = 1; n <= 2000; ++n) {
    pseudo += dot(mean, learner.action());
    const Point cost = stream.next();
    certifier.observe(cost, learner.step(cost));
  }
  std::cout << "pseudo-regret after 2000 turns: " << pseudo << '\n';
  if (const auto& snap = certifier.summary().snap_turn) {
    std::cout << "snapped to the best vertex after turn " << *snap << '\n';
  }
  std::cout << "snap certificate violations: " << certifier.summary().violations << '\n';
}
