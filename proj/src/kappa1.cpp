#include "coulomb3/kappa1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coulomb3/geometry.hpp"
#include "coulomb3/specfun.hpp"

namespace coulomb3::kappa1 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double square(double x) { return x * x; }

struct MatchContext {
  Charges charges;
  PairCouplings z;
  KineticCoefficients kin;
  kappa0::QuantumNumbers qn;
  geom::KOrder k;
};

struct MatchPoint {
  double wp = 0;
  double lhs = kNaN;
  double rhs = kNaN;
  double nu1 = kNaN;
  double nu2 = kNaN;
  bool feasible = false;

  double gap() const { return lhs - rhs; }
};

MatchPoint evaluate(const MatchContext& ctx, double wp) {
  MatchPoint pt;
  pt.wp = wp;
  if (!(wp > 0.0)) return pt;
  try {
    const auto ck = geom::companion_ratio(ctx.z, wp, ctx.k);
    if (!ck || !(*ck > 0.0)) return pt;
    const auto eff = kappa0::effective_couplings(ctx.z, ctx.kin, wp, *ck, 1);
    const double rad1 = eff.a1 + square(ctx.qn.l1 + 0.5);
    const double rad2 = eff.a2 + square(ctx.qn.l2 + 0.5);
    if (!(rad1 > 0.0) || !(rad2 > 0.0)) return pt;
    pt.nu1 = std::sqrt(rad1);
    pt.nu2 = std::sqrt(rad2);
    pt.lhs = ctx.kin.alpha * scaled_eigenvalue(ctx.qn.n1, pt.nu1);
    pt.rhs = ctx.kin.beta * scaled_eigenvalue(ctx.qn.n2, pt.nu2);
    pt.feasible = eff.z12_eff > 0.0 && pt.nu1 < ctx.qn.n1 && pt.nu2 < ctx.qn.n2 &&
                  geom::feasibility(ctx.charges, wp, ctx.k).feasible;
  } catch (const std::exception&) {
    // excluded multiplier or a series failure: no usable sample here
    pt.lhs = pt.rhs = pt.nu1 = pt.nu2 = kNaN;
    pt.feasible = false;
  }
  return pt;
}

MatchContext make_context(const ThreeBodySystem& system, const kappa0::QuantumNumbers& qn,
                          geom::KOrder k) {
  kappa0::validate(qn);
  return {system.charges(), pair_couplings(system), kinetic_coefficients(system), qn, k};
}

std::vector<MatchPoint> sample_uniform(const MatchContext& ctx, double lo, double hi, int steps,
                                       Exec exec) {
  std::vector<MatchPoint> pts(steps);
  const double h = (hi - lo) / (steps - 1);
  for_index(static_cast<std::size_t>(steps), exec,
            [&](std::size_t i) { pts[i] = evaluate(ctx, lo + h * static_cast<double>(i)); });
  return pts;
}

// Bisect lhs - rhs on a bracket of feasible points with opposite gap signs.
std::optional<MatchPoint> refine_root(const MatchContext& ctx, double lo, double hi,
                                      double f_lo, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const MatchPoint pm = evaluate(ctx, mid);
    if (std::isnan(pm.gap())) return std::nullopt;
    if (pm.gap() == 0.0) return pm;
    if ((pm.gap() < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = pm.gap();
    } else {
      hi = mid;
    }
  }
  MatchPoint root = evaluate(ctx, 0.5 * (lo + hi));
  if (!root.feasible) return std::nullopt;
  return root;
}

// Multiplier subintervals of [lo, hi] on which the companion-ratio
// denominator keeps one sign; the excluded multiplier splits the range.
std::vector<std::pair<double, double>> denominator_intervals(const PairCouplings& z, int k,
                                                             double lo, double hi) {
  std::vector<std::pair<double, double>> out;
  double split = -1.0;
  if (z.z13 < 0) {
    split = std::pow(-static_cast<double>(z.z12) / z.z23, 1.0 / k);
  }
  if (split > lo && split < hi) {
    const double inset = 1e-8 * split;
    out.emplace_back(lo, split - inset);
    out.emplace_back(split + inset, hi);
  } else {
    out.emplace_back(lo, hi);
  }
  return out;
}

}  // namespace

double bessel_index(double a1, int l) {
  if (l < 0) throw std::invalid_argument("bessel_index: l >= 0 required");
  const double rad = a1 + square(l + 0.5);
  if (!(rad > 0.0)) throw std::domain_error("bessel_index: nonpositive radicand a1 + (l+1/2)^2");
  return std::sqrt(rad);
}

double scaled_eigenvalue(int n, double nu) {
  if (n < 1) throw std::invalid_argument("scaled_eigenvalue: n >= 1 required");
  if (!(nu > 0.0)) throw std::domain_error("scaled_eigenvalue: nu > 0 required");
  if (nu >= static_cast<double>(n)) return 0.0;  // no bound state
  return -4.0 * std::pow(specfun::gamma_ratio(n, nu), 1.0 / nu);
}

double radial_eigenvalue(int n, double nu, double r0) {
  if (!(r0 > 0.0)) throw std::invalid_argument("radial_eigenvalue: r0 > 0 required");
  return scaled_eigenvalue(n, nu) / (r0 * r0);
}

ScanCurve scan_matching(const ThreeBodySystem& system, const kappa0::QuantumNumbers& qn,
                        int k, double wp_min, double wp_max, int steps, Exec exec) {
  if (k < 2) throw std::invalid_argument("scan_matching: k >= 2 required");
  if (steps < 2) throw std::invalid_argument("scan_matching: steps >= 2 required");
  if (!(wp_min >= 0.0) || !(wp_max > wp_min)) {
    throw std::invalid_argument("scan_matching: need 0 <= wp_min < wp_max");
  }
  const MatchContext ctx = make_context(system, qn, geom::KOrder(k));

  ScanCurve curve;
  curve.k = k;
  curve.qn = qn;
  curve.samples.resize(steps);
  const auto pts = sample_uniform(ctx, wp_min, wp_max, steps, exec);
  bool any = false;
  for (int i = 0; i < steps; ++i) {
    curve.samples[i] = {pts[i].wp, pts[i].lhs, pts[i].rhs, pts[i].feasible};
    any = any || !std::isnan(pts[i].lhs);
  }
  if (!any) {
    throw infeasible_window_error("scan_matching: no point of the range admits a geometry");
  }
  return curve;
}

std::vector<Kappa1Match> find_matches(const ThreeBodySystem& system, const MatchOptions& opt) {
  if (opt.n_max < 1 || opt.k_max < 2) {
    throw std::invalid_argument("find_matches: n_max >= 1 and k_max >= 2 required");
  }
  if (!(opt.wp_min > 0.0) || !(opt.wp_max > opt.wp_min)) {
    throw std::invalid_argument("find_matches: need 0 < wp_min < wp_max");
  }
  if (opt.prescan_steps < 2 || opt.scan_steps < 2) {
    throw std::invalid_argument("find_matches: step counts must be >= 2");
  }

  std::vector<Kappa1Match> matches;
  const PairCouplings z = pair_couplings(system);

  for (int n1 = 1; n1 <= opt.n_max; ++n1) {
    for (int n2 = 1; n2 <= opt.n_max; ++n2) {
      for (int k = 2; k <= opt.k_max; ++k) {
        const kappa0::QuantumNumbers qn{n1, n2, 0, 0};
        const MatchContext ctx = make_context(system, qn, geom::KOrder(k));

        for (auto [lo, hi] : denominator_intervals(z, k, opt.wp_min, opt.wp_max)) {
          const auto coarse = sample_uniform(ctx, lo, hi, opt.prescan_steps, opt.exec);
          // Maximal runs of feasible prescan points, padded by one cell so a
          // window edge inside the neighbouring cell is not lost.
          int i = 0;
          while (i < opt.prescan_steps) {
            if (!coarse[i].feasible) {
              ++i;
              continue;
            }
            int j = i;
            while (j + 1 < opt.prescan_steps && coarse[j + 1].feasible) ++j;
            const double a = coarse[std::max(i - 1, 0)].wp;
            const double b = coarse[std::min(j + 1, opt.prescan_steps - 1)].wp;

            const auto fine = sample_uniform(ctx, a, b, opt.scan_steps, opt.exec);
            for (int s = 0; s + 1 < opt.scan_steps; ++s) {
              const auto& p0 = fine[s];
              const auto& p1 = fine[s + 1];
              if (!p0.feasible || !p1.feasible) continue;
              if (!(p0.gap() * p1.gap() < 0.0)) continue;
              auto root = refine_root(ctx, p0.wp, p1.wp, p0.gap(), opt.wp_tol);
              if (!root) continue;
              const bool dup = std::any_of(matches.begin(), matches.end(), [&](const auto& m) {
                return m.k == k && m.n1 == n1 && m.n2 == n2 &&
                       std::fabs(m.wp_star - root->wp) < 1e-9;
              });
              if (dup) continue;
              Kappa1Match m;
              m.k = k;
              m.wp_star = root->wp;
              m.nu1 = root->nu1;
              m.nu2 = root->nu2;
              m.energy_coefficient = root->lhs;
              m.r0 = opt.r0;
              m.n1 = n1;
              m.n2 = n2;
              m.l1 = qn.l1;
              m.l2 = qn.l2;
              try {
                m.cutoff_bessel = cutoff_bessel_value(n1, root->nu1);
              } catch (const std::exception&) {
                m.cutoff_bessel = kNaN;  // order too close to an integer
              }
              matches.push_back(m);
            }
            i = j + 1;
          }
        }
      }
    }
  }

  std::sort(matches.begin(), matches.end(), [](const auto& a, const auto& b) {
    if (a.k != b.k) return a.k < b.k;
    if (a.wp_star != b.wp_star) return a.wp_star < b.wp_star;
    return std::pair(a.n1, a.n2) < std::pair(b.n1, b.n2);
  });
  return matches;
}

double calibrate_cutoff(const ThreeBodySystem& system, double reference_total,
                        const MatchOptions& options) {
  const auto matches = find_matches(system, options);
  if (matches.empty()) {
    throw no_match_error("calibrate_cutoff: the r^-2 level does not contribute for this system");
  }
  const auto spec = kappa0::spectrum(system);
  if (spec.entries.empty()) {
    throw calibration_error("calibrate_cutoff: no kappa-0 bound states for this arrangement");
  }
  const double e0 = spec.infimum().energy;
  if (!(reference_total < e0)) {
    throw calibration_error(
        "calibrate_cutoff: reference total must lie strictly below the kappa-0 infimum");
  }
  const auto deepest = std::min_element(matches.begin(), matches.end(), [](const auto& a, const auto& b) {
    return a.energy_coefficient < b.energy_coefficient;
  });
  return std::sqrt(deepest->energy_coefficient / (reference_total - e0));
}

double total_energy(std::span<const double> per_order_energies) {
  if (per_order_energies.empty()) {
    throw std::invalid_argument("total_energy: the order-0 term is mandatory");
  }
  if (per_order_energies.size() > 2) {
    throw std::invalid_argument("total_energy: only orders 0 and 1 are supported");
  }
  double sum = 0.0;
  for (double e : per_order_energies) sum += e;
  return sum;
}

double radial_wavefunction(double nu, double b1, double r, double r0) {
  if (!(r0 > 0.0)) throw std::invalid_argument("radial_wavefunction: r0 > 0 required");
  if (!(b1 < 0.0)) throw std::domain_error("radial_wavefunction: requires a negative eigenvalue parameter");
  if (r <= r0) return 0.0;  // hard repulsive core
  return std::sqrt(r) * specfun::bessel_k(nu, r * std::sqrt(-b1));
}

double cutoff_bessel_value(int n, double nu) {
  if (n < 1) throw std::invalid_argument("cutoff_bessel_value: n >= 1 required");
  if (!(nu > 0.0) || nu >= static_cast<double>(n)) {
    throw std::domain_error("cutoff_bessel_value: requires 0 < nu < n");
  }
  const double arg = 2.0 * std::pow(specfun::gamma_ratio(n, nu), 0.5 / nu);
  return specfun::bessel_k(nu, arg);
}

}  // namespace coulomb3::kappa1
