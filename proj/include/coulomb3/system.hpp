#pragma once

#include <array>
#include <string>
#include <vector>

namespace coulomb3 {

using Charges = std::array<int, 3>;
using Masses = std::array<double, 3>;

/// A system of three point charges, in atomic units (electron mass = 1,
/// charges in units of e, energies in Hartree). Charges must be nonzero
/// integers and masses strictly positive; enforced at construction.
class ThreeBodySystem {
 public:
  ThreeBodySystem(Charges charges, Masses masses, std::string label = {});

  const Charges& charges() const { return charges_; }
  const Masses& masses() const { return masses_; }
  const std::string& label() const { return label_; }

  // Labels are presentation only; identity is the (charge, mass) pairing.
  friend bool operator==(const ThreeBodySystem& a, const ThreeBodySystem& b) {
    return a.charges_ == b.charges_ && a.masses_ == b.masses_;
  }

 private:
  Charges charges_;
  Masses masses_;
  std::string label_;
};

/// Pairwise charge products, kept as exact integers.
struct PairCouplings {
  int z12 = 0;
  int z23 = 0;
  int z13 = 0;
};

/// Coefficients of the reduced kinetic operator in the two relative
/// coordinates r12, r23 (and its two companion forms in the other
/// coordinate pairings). All carry inverse-mass units; alpha, beta,
/// gamma, xi are positive and zeta, eta negative for physical masses.
struct KineticCoefficients {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
  double xi = 0;
  double zeta = 0;
  double eta = 0;
};

KineticCoefficients kinetic_coefficients(const ThreeBodySystem& system);

PairCouplings pair_couplings(const ThreeBodySystem& system);
PairCouplings pair_couplings(const Charges& charges);

/// A joint permutation of the (charge, mass) pairs.
struct Arrangement {
  std::array<int, 3> perm{0, 1, 2};

  ThreeBodySystem apply(const ThreeBodySystem& system) const;
  Arrangement inverse() const;
};

/// All six joint permutations, identity first.
const std::array<Arrangement, 6>& all_arrangements();

/// Distinct systems obtained by permuting the (charge, mass) pairs jointly.
/// Exact duplicates are removed; the original system comes first.
std::vector<ThreeBodySystem> arrangements(const ThreeBodySystem& system);

}  // namespace coulomb3
