#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "coulomb3/kappa0.hpp"
#include "coulomb3/parallel.hpp"
#include "coulomb3/system.hpp"

namespace coulomb3::kappa1 {

/// No matched pair of branch eigenvalues exists; the r^-2 correction does
/// not contribute to the total energy.
class no_match_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class calibration_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested scan range contains no point where the companion ratio
/// exists.
class infeasible_window_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solution of the branch-matching condition alpha B1(1) = beta B1(2).
/// energy_coefficient = E1 * r0^2 (Hartree * bohr^2), so the level is
/// energy_coefficient / r0^2 once a cutoff radius is chosen.
struct Kappa1Match {
  int k = 3;
  double wp_star = 0;
  double nu1 = 0, nu2 = 0;
  double energy_coefficient = 0;
  std::optional<double> r0;
  int n1 = 1, n2 = 1, l1 = 0, l2 = 0;
  // K_nu1 evaluated at the cutoff argument (r0-free); the eigenvalue comes
  // from term matching of the two regular series, so this need not vanish.
  double cutoff_bessel = 0;
};

struct ScanSample {
  double wp = 0;
  double lhs = 0;  // alpha * r0^2 * B1(1)
  double rhs = 0;  // beta  * r0^2 * B1(2)
  bool feasible = false;
};

/// Matching-condition curve for one order k; both sides are scaled by r0^2
/// so the scan is radius-free. Samples are ordered by strictly increasing
/// wp; points where no branch eigenvalue exists carry NaN sides.
struct ScanCurve {
  int k = 3;
  kappa0::QuantumNumbers qn;
  std::vector<ScanSample> samples;
};

struct MatchOptions {
  int n_max = 1;  // the default search covers n1 = n2 = 1, l1 = l2 = 0
  int k_max = 64;
  double wp_min = 1e-3;
  double wp_max = 8.0;
  int prescan_steps = 512;
  int scan_steps = 500;
  double wp_tol = 1e-12;
  std::optional<double> r0;  // recorded on matches when supplied
  Exec exec = Exec::parallel;
};

/// Index nu = sqrt(a1 + (l + 1/2)^2) of the decaying radial solution
/// sqrt(r) K_nu; requires a positive radicand.
double bessel_index(double a1, int l);

/// Eigenvalue parameter B1 = -(2/r0)^2 (Gamma(n+nu)/Gamma(n-nu))^{1/nu} for
/// n > nu; zero (no bound state) for n <= nu.
double radial_eigenvalue(int n, double nu, double r0);

/// r0^2 * B1: the radius-free factor -4 (Gamma(n+nu)/Gamma(n-nu))^{1/nu}.
double scaled_eigenvalue(int n, double nu);

ScanCurve scan_matching(const ThreeBodySystem& system, const kappa0::QuantumNumbers& qn,
                        int k, double wp_min, double wp_max, int steps,
                        Exec exec = Exec::parallel);

/// All roots (k, wp*) of alpha B1(1) - beta B1(2) over k in {2..k_max},
/// located by sign-change bracketing and bisection to wp_tol, each validated
/// against the geometric feasibility and the bound-state windows
/// 0 < nu_i < n_i. An empty list is a valid outcome: the r^-2 level does
/// not contribute. Results ascend in (k, wp*).
std::vector<Kappa1Match> find_matches(const ThreeBodySystem& system,
                                      const MatchOptions& options = {});

/// Cutoff radius from a reference total energy: r0 =
/// sqrt(coefficient / (reference - E0)) using the deepest match and the
/// kappa-0 infimum E0. The reference must lie below E0.
double calibrate_cutoff(const ThreeBodySystem& system, double reference_total,
                        const MatchOptions& options = {});

/// Sum of per-order ground energies (index = derivative order). The
/// cross-gradient kinetic term leaves ground levels unchanged, so the
/// orders contribute independently; only orders 0 and 1 are supported and
/// the order-0 term is mandatory.
double total_energy(std::span<const double> per_order_energies);

/// Radial factor u(r) = sqrt(r) K_nu(r sqrt(-b1)) outside the hard core,
/// zero for r <= r0.
double radial_wavefunction(double nu, double b1, double r, double r0);

/// K_nu at the cutoff argument 2 (Gamma(n+nu)/Gamma(n-nu))^{1/(2 nu)},
/// which is independent of r0. Reported as a diagnostic alongside matches.
double cutoff_bessel_value(int n, double nu);

}  // namespace coulomb3::kappa1
