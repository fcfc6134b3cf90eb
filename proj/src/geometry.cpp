#include "coulomb3/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace coulomb3::geom {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kExcludedBand = 1e-9;  // relative band around the excluded multiplier

int sign_of(int v) { return v > 0 ? 1 : -1; }

// Index of the charge whose sign differs from the other two, or -1 when all
// three share a sign.
int odd_charge_index(const Charges& z) {
  int s0 = sign_of(z[0]), s1 = sign_of(z[1]), s2 = sign_of(z[2]);
  if (s0 == s1 && s1 == s2) return -1;
  if (s1 == s2) return 0;
  if (s0 == s2) return 1;
  return 2;
}

// Excluded multiplier (-z1/z3)^{1/k}, defined when z1/z3 < 0; at the
// infinite order every positive ratio collapses to 1.
std::optional<double> excluded_multiplier(const PairCouplings& z, KOrder k) {
  if (z.z13 >= 0) return std::nullopt;
  const double ratio = -static_cast<double>(z.z12) / static_cast<double>(z.z23);
  if (k.is_infinite()) return 1.0;
  return std::pow(ratio, 1.0 / k.value());
}

bool within_excluded_band(const PairCouplings& z, double wp, KOrder k) {
  auto wx = excluded_multiplier(z, k);
  if (!wx) return false;
  if (k.is_infinite()) {
    // The denominator limit vanishes only when z12 + z23 = 0 exactly.
    return z.z12 + z.z23 == 0 && std::fabs(wp - 1.0) <= kExcludedBand;
  }
  return std::fabs(wp - *wx) <= kExcludedBand * *wx;
}

}  // namespace

std::optional<double> companion_ratio(const PairCouplings& z, double wp, KOrder k) {
  if (!(wp >= 0.0)) throw std::invalid_argument("companion_ratio: multiplier must be >= 0");
  if (within_excluded_band(z, wp, k)) {
    throw excluded_multiplier_error(
        "companion_ratio: multiplier within 1e-9 of the excluded value "
        "(-z1/z3)^{1/k} where the denominator vanishes");
  }
  if (k.is_infinite()) {
    if (wp < 1.0) {
      // z23 wp^k -> 0: the base tends to -z13/z12.
      if (!(-static_cast<double>(z.z13) / z.z12 > 0.0)) return std::nullopt;
      return wp;
    }
    if (wp > 1.0) {
      // the denominator is dominated by z23 wp^k and base^{1/k} -> 1/wp.
      if (!(-static_cast<double>(z.z13) / z.z23 > 0.0)) return std::nullopt;
      return 1.0;
    }
    const double denom = static_cast<double>(z.z12) + z.z23;
    if (!(-z.z13 / denom > 0.0)) return std::nullopt;
    return 1.0;
  }
  const double denom = z.z12 + z.z23 * std::pow(wp, k.value());
  const double base = -z.z13 / denom;
  if (!(base > 0.0)) return std::nullopt;
  return wp * std::pow(base, 1.0 / k.value());
}

bool sign_condition(const Charges& charges, double wp, KOrder k) {
  const double r23 = static_cast<double>(charges[1]) / charges[2];
  const double r21 = static_cast<double>(charges[1]) / charges[0];
  if (k.is_infinite()) {
    if (wp < 1.0) return r23 < 0.0;
    if (wp > 1.0) return r21 < 0.0;
    return r23 + r21 < 0.0;
  }
  return r23 + r21 * std::pow(wp, k.value()) < 0.0;
}

std::optional<double> triangle_angle(double wp, double ck) {
  if (!(wp > 0.0) || !(ck > 0.0)) return std::nullopt;
  const double product = (1.0 + ck + wp) * (1.0 + ck - wp) * (1.0 - ck + wp) * (ck + wp - 1.0);
  if (!(product > 0.0)) return std::nullopt;
  double s = std::sqrt(product) / (2.0 * wp * ck);
  if (s > 1.0) {
    if (s > 1.0 + 1e-12) return std::nullopt;
    s = 1.0;
  }
  return std::asin(s);
}

std::optional<GeometrySolution> solve_geometry(double wp, double ck, KOrder k) {
  if (!triangle_angle(wp, ck)) return std::nullopt;
  // Interior angles of the (1, wp, ck) triangle: omega opposite the unit
  // side, sigma opposite wp. This fixes the acute/obtuse branches so that
  // both sine-law relations and tau = omega + sigma hold simultaneously.
  const auto interior = [](double num, double den) {
    return std::acos(std::clamp(num / den, -1.0, 1.0));
  };
  const double omega = interior(wp * wp + ck * ck - 1.0, 2.0 * wp * ck);
  const double sigma = interior(1.0 + ck * ck - wp * wp, 2.0 * ck);
  if (omega > 0.5 * kPi && sigma > 0.5 * kPi) return std::nullopt;
  return GeometrySolution{k, wp, ck, omega, sigma, omega + sigma};
}

FeasibilityReport feasibility(const Charges& charges, double wp, KOrder k) {
  const int odd = odd_charge_index(charges);
  if (odd < 0) return {false, FeasibilityCase::no_opposite_sign, std::nullopt};
  if (!(wp > 0.0)) return {false, FeasibilityCase::degenerate, std::nullopt};

  const PairCouplings z = pair_couplings(charges);
  if (within_excluded_band(z, wp, k)) {
    return {false, FeasibilityCase::excluded_multiplier, std::nullopt};
  }
  if (!sign_condition(charges, wp, k)) {
    return {false, FeasibilityCase::sign_condition, std::nullopt};
  }
  const auto ck = companion_ratio(z, wp, k);
  if (!ck || !(*ck > 0.0)) {
    return {false, FeasibilityCase::sign_condition, std::nullopt};
  }
  if (!triangle_angle(wp, *ck)) {
    return {false, FeasibilityCase::triangle, std::nullopt};
  }
  auto sol = solve_geometry(wp, *ck, k);
  if (!sol) return {false, FeasibilityCase::obtuse_pair, std::nullopt};

  const FeasibilityCase pattern = odd == 0   ? FeasibilityCase::odd_charge_first
                                  : odd == 1 ? FeasibilityCase::odd_charge_middle
                                             : FeasibilityCase::odd_charge_third;
  return {true, pattern, std::move(sol)};
}

std::vector<KOrder> feasible_exponents(const Charges& charges, double wp, int k_max,
                                       bool include_infinite) {
  if (k_max < 2) throw std::invalid_argument("feasible_exponents: k_max must be >= 2");
  std::vector<KOrder> out;
  for (int k = 2; k <= k_max; ++k) {
    if (feasibility(charges, wp, KOrder(k)).feasible) out.emplace_back(k);
  }
  if (include_infinite && feasibility(charges, wp, KOrder::infinity()).feasible) {
    out.push_back(KOrder::infinity());
  }
  return out;
}

double stability_residual(const PairCouplings& z, const GeometrySolution& sol) {
  if (sol.k.is_infinite()) {
    throw std::invalid_argument("stability_residual: defined for finite orders only");
  }
  const int k = sol.k.value();
  // r12 = 1, r23 = 1/wp, r13 = ck/wp
  return z.z12 + z.z23 * std::pow(sol.wp, k) + z.z13 * std::pow(sol.wp / sol.ck, k);
}

StabilityReport check_stability(const ThreeBodySystem& system) {
  const auto arrs = arrangements(system);
  for (std::size_t idx = 0; idx < arrs.size(); ++idx) {
    const auto& arr = arrs[idx];
    const auto kin = kinetic_coefficients(arr);
    const double natural = std::sqrt(kin.alpha / kin.beta);
    const double candidates[] = {natural, 1.0, 0.5, 0.75, 1.5, 2.0, 3.0};
    for (double wp : candidates) {
      for (int k = 2; k <= 8; ++k) {
        auto rep = feasibility(arr.charges(), wp, KOrder(k));
        if (rep.feasible) return {true, rep.solution, arr, idx};
      }
      auto rep = feasibility(arr.charges(), wp, KOrder::infinity());
      if (rep.feasible) return {true, rep.solution, arr, idx};
    }
  }
  return {false, std::nullopt, std::nullopt, 0};
}

}  // namespace coulomb3::geom
