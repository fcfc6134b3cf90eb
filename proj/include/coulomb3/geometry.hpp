#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "coulomb3/system.hpp"

namespace coulomb3::geom {

/// Exponent k of the inverse-power sum in the zero-potential-derivative
/// condition: a finite integer >= 2, or the k -> infinity limit. The limit
/// is a distinguished state, never a large float.
class KOrder {
 public:
  explicit KOrder(int k) : k_(k) {
    if (k < 2) throw std::invalid_argument("k order: finite exponent must be >= 2");
  }
  static KOrder infinity() { return KOrder(tag_infinite{}); }

  bool is_infinite() const { return k_ < 0; }
  int value() const {
    if (is_infinite()) throw std::logic_error("k order: no finite value at infinity");
    return k_;
  }

  friend bool operator==(KOrder a, KOrder b) { return a.k_ == b.k_; }
  // Finite orders ascending, the infinite order after all of them.
  friend bool operator<(KOrder a, KOrder b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return a.k_ < b.k_;
  }

 private:
  struct tag_infinite {};
  explicit KOrder(tag_infinite) : k_(-1) {}
  int k_;
};

/// The multiplier wp coincides with an excluded value where the companion
/// ratio's denominator vanishes.
class excluded_multiplier_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A triangle configuration solving the inverse-power sum condition.
/// wp = r12/r23 and ck satisfy sin(sigma) = wp sin(omega),
/// sin(tau) = ck sin(omega), tau = omega + sigma; side ratios follow from
/// the sine law as r12 : r23 : r13 = 1 : 1/wp : ck/wp.
struct GeometrySolution {
  KOrder k;
  double wp;
  double ck;
  double omega;  // angle between r12 and r13
  double sigma;  // angle between r13 and r23
  double tau;    // angle between r12 and r23
};

enum class FeasibilityCase {
  // feasible charge patterns (exactly one charge of opposite sign)
  odd_charge_first,   // particle 1 differs, multiplier bounded below
  odd_charge_middle,  // particle 2 differs, any positive multiplier
  odd_charge_third,   // particle 3 differs, multiplier bounded above
  // rejections
  no_opposite_sign,
  sign_condition,
  excluded_multiplier,
  triangle,
  degenerate,
  obtuse_pair,
};

struct FeasibilityReport {
  bool feasible = false;
  FeasibilityCase outcome = FeasibilityCase::no_opposite_sign;
  std::optional<GeometrySolution> solution;
};

/// Companion ratio ck = wp * (-z13 / (z12 + z23 wp^k))^{1/k}; at the
/// infinite order the analytic limit (wp below 1, 1 otherwise). Returns
/// nullopt when the bracketed base is nonpositive. Throws
/// excluded_multiplier_error within a 1e-9 relative band of the multiplier
/// that zeroes the denominator.
std::optional<double> companion_ratio(const PairCouplings& z, double wp, KOrder k);

/// (Z2/Z3) + (Z2/Z1) wp^k < 0, the admissibility inequality for the
/// charge-weighted sum; evaluated in the limit at the infinite order.
bool sign_condition(const Charges& charges, double wp, KOrder k);

/// Principal opening angle from sin(omega) =
/// sqrt((1+c+w)(1+c-w)(1-c+w)(c+w-1)) / (2 w c), in (0, pi/2].
/// nullopt when the triple (1, wp, ck) violates the triangle inequality or
/// collapses to a degenerate (collinear) configuration.
std::optional<double> triangle_angle(double wp, double ck);

/// Full angle set of the (1, wp, ck) triangle with the obtuse branch
/// resolved; degenerate configurations are rejected.
std::optional<GeometrySolution> solve_geometry(double wp, double ck, KOrder k);

/// Decides whether an admissible angle set exists for the given charges,
/// multiplier and order, reporting which charge pattern applied or why the
/// configuration was rejected.
FeasibilityReport feasibility(const Charges& charges, double wp, KOrder k);

/// All feasible orders k in {2..k_max} (plus the infinite order on request),
/// ascending.
std::vector<KOrder> feasible_exponents(const Charges& charges, double wp, int k_max,
                                       bool include_infinite);

/// z12/r12^k + z23/r23^k + z13/r13^k on the solution's triangle with
/// r12 = 1; identically ~0 for a valid solution at finite k.
double stability_residual(const PairCouplings& z, const GeometrySolution& sol);

struct StabilityReport {
  bool stable = false;
  std::optional<GeometrySolution> witness;
  std::optional<ThreeBodySystem> arrangement;
  std::size_t arrangement_index = 0;
};

/// A system is stable when some arrangement admits a feasible geometry for
/// some (wp, k); the report carries the first witness found.
StabilityReport check_stability(const ThreeBodySystem& system);

}  // namespace coulomb3::geom
