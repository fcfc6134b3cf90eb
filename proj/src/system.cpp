#include "coulomb3/system.hpp"

#include <algorithm>
#include <stdexcept>

namespace coulomb3 {

ThreeBodySystem::ThreeBodySystem(Charges charges, Masses masses, std::string label)
    : charges_(charges), masses_(masses), label_(std::move(label)) {
  for (int z : charges_) {
    if (z == 0) throw std::invalid_argument("three-body system: every charge must be a nonzero integer");
  }
  for (double m : masses_) {
    if (!(m > 0.0)) throw std::invalid_argument("three-body system: every mass must be positive");
  }
}

KineticCoefficients kinetic_coefficients(const ThreeBodySystem& system) {
  const auto& m = system.masses();
  KineticCoefficients c;
  c.alpha = 0.5 * (1.0 / m[1] + 1.0 / m[2]);
  c.beta = 0.5 * (1.0 / m[0] + 1.0 / m[1]);
  c.gamma = 1.0 / m[1];
  c.xi = 0.5 * (1.0 / m[0] + 4.0 / m[1] + 1.0 / m[2]);
  c.zeta = -(2.0 / m[1] + 1.0 / m[2]);
  c.eta = -(1.0 / m[0] + 2.0 / m[1]);
  return c;
}

PairCouplings pair_couplings(const Charges& z) {
  return PairCouplings{z[0] * z[1], z[1] * z[2], z[0] * z[2]};
}

PairCouplings pair_couplings(const ThreeBodySystem& system) {
  return pair_couplings(system.charges());
}

ThreeBodySystem Arrangement::apply(const ThreeBodySystem& system) const {
  const auto& z = system.charges();
  const auto& m = system.masses();
  return ThreeBodySystem({z[perm[0]], z[perm[1]], z[perm[2]]},
                         {m[perm[0]], m[perm[1]], m[perm[2]]}, system.label());
}

Arrangement Arrangement::inverse() const {
  Arrangement inv;
  for (int i = 0; i < 3; ++i) inv.perm[perm[i]] = i;
  return inv;
}

const std::array<Arrangement, 6>& all_arrangements() {
  static const std::array<Arrangement, 6> table = {{
      {{0, 1, 2}}, {{0, 2, 1}}, {{1, 0, 2}}, {{1, 2, 0}}, {{2, 0, 1}}, {{2, 1, 0}},
  }};
  return table;
}

std::vector<ThreeBodySystem> arrangements(const ThreeBodySystem& system) {
  std::vector<ThreeBodySystem> out;
  out.reserve(6);
  for (const auto& a : all_arrangements()) {
    ThreeBodySystem candidate = a.apply(system);
    if (std::find(out.begin(), out.end(), candidate) == out.end()) {
      out.push_back(std::move(candidate));
    }
  }
  return out;
}

}  // namespace coulomb3
