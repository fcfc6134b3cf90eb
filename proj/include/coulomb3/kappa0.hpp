#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "coulomb3/geometry.hpp"
#include "coulomb3/parallel.hpp"
#include "coulomb3/system.hpp"

namespace coulomb3::kappa0 {

/// Thrown by the spectrum when no arrangement of the system admits a
/// feasible geometry.
class unstable_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Principal and orbital quantum numbers for the two radial branches;
/// n_i >= l_i + 1.
struct QuantumNumbers {
  int n1 = 1;
  int n2 = 1;
  int l1 = 0;
  int l2 = 0;
};

void validate(const QuantumNumbers& qn);

/// Strengths of the reduced inverse-power potentials after folding the
/// charge sum onto one relative coordinate. z23_eff = z12_eff / wp^{kappa+1}
/// exactly; a1 = z12_eff/alpha and a2 = z23_eff/beta are the coupling
/// constants of the two one-dimensional radial problems.
struct EffectiveCouplings {
  double z12_eff = 0;
  double z23_eff = 0;
  double a1 = 0;
  double a2 = 0;
};

/// One eigenvalue record. Energies are in Hartree.
struct SpectrumEntry {
  int kappa = 0;
  std::size_t arrangement = 0;
  int n1 = 1, n2 = 1, l1 = 0, l2 = 0;
  geom::KOrder k;
  double energy = 0;
};

struct Spectrum {
  std::vector<ThreeBodySystem> systems;  // arrangement index -> system
  std::vector<SpectrumEntry> entries;    // lexicographic in (arrangement, n1, n2, k)
  std::size_t infimum_index = 0;         // valid when entries is nonempty

  const SpectrumEntry& infimum() const { return entries.at(infimum_index); }
};

struct SpectrumOptions {
  int n_max = 5;
  int k_max = 64;
  bool scan_arrangements = false;
  Exec exec = Exec::parallel;
};

/// Multiplier fixed by equating the two branch spectra:
/// wp = (n1/n2) sqrt(alpha/beta).
double multiplier_for(int n1, int n2, const KineticCoefficients& kin);

/// Effective couplings for derivative order kappa >= 0 at geometry (wp, ck):
/// z12_eff = (-1)^kappa kappa! (z12 + z23 wp^{kappa+1} + z13 (wp/ck)^{kappa+1}).
EffectiveCouplings effective_couplings(const PairCouplings& z, const KineticCoefficients& kin,
                                       double wp, double ck, int kappa);

/// Bound-state energy E(n1, n2, k) in Hartree for the Coulomb-order
/// potential, with wp fixed by multiplier_for. nullopt when the geometry is
/// infeasible or the effective coupling is repulsive (no bound state).
std::optional<double> bound_energy(const ThreeBodySystem& system, int n1, int n2,
                                   geom::KOrder k);

/// Every feasible E(n1, n2, k) for n1, n2 <= n_max and k in {2..k_max, inf},
/// per arrangement when requested, with the infimum identified. Throws
/// unstable_error when the system admits no feasible geometry at all.
Spectrum spectrum(const ThreeBodySystem& system, const SpectrumOptions& options = {});

/// Radial factor u(r) = M_{n,l+1/2}(|a0| r / n) of the bound eigenfunction
/// for an attractive coupling a0 < 0; the full eigenfunction is
/// C r^{-1} u(r) Y_{l pi}(angles) up to normalization.
double radial_wavefunction(int n, int l, double a0, double r);

}  // namespace coulomb3::kappa0
