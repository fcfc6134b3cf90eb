#include "coulomb3/kappa0.hpp"

#include <cmath>

#include "coulomb3/specfun.hpp"

namespace coulomb3::kappa0 {

namespace {

double square(double x) { return x * x; }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

void validate(const QuantumNumbers& qn) {
  if (qn.l1 < 0 || qn.l2 < 0) throw std::invalid_argument("quantum numbers: l >= 0 required");
  if (qn.n1 < qn.l1 + 1 || qn.n2 < qn.l2 + 1) {
    throw std::invalid_argument("quantum numbers: n >= l + 1 required");
  }
}

double multiplier_for(int n1, int n2, const KineticCoefficients& kin) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("multiplier_for: n1, n2 >= 1 required");
  return (static_cast<double>(n1) / n2) * std::sqrt(kin.alpha / kin.beta);
}

EffectiveCouplings effective_couplings(const PairCouplings& z, const KineticCoefficients& kin,
                                       double wp, double ck, int kappa) {
  if (kappa < 0) throw std::invalid_argument("effective_couplings: kappa >= 0 required");
  if (!(wp > 0.0) || !(ck > 0.0)) {
    throw std::invalid_argument("effective_couplings: requires a feasible geometry (wp, ck > 0)");
  }
  const int p = kappa + 1;
  const double wpow = std::pow(wp, p);
  const double sum = z.z12 + z.z23 * wpow + z.z13 * std::pow(wp / ck, p);
  EffectiveCouplings eff;
  eff.z12_eff = (kappa % 2 ? -1.0 : 1.0) * factorial(kappa) * sum;
  eff.z23_eff = eff.z12_eff / wpow;
  eff.a1 = eff.z12_eff / kin.alpha;
  eff.a2 = eff.z23_eff / kin.beta;
  return eff;
}

std::optional<double> bound_energy(const ThreeBodySystem& system, int n1, int n2,
                                   geom::KOrder k) {
  const auto kin = kinetic_coefficients(system);
  const auto z = pair_couplings(system);
  const auto& q = system.charges();
  const double wp = multiplier_for(n1, n2, kin);

  const auto rep = geom::feasibility(q, wp, k);
  if (!rep.feasible) return std::nullopt;

  const auto eff = effective_couplings(z, kin, wp, rep.solution->ck, 0);
  if (!(eff.z12_eff < 0.0)) return std::nullopt;  // repulsive branch: no bound state

  const double sa = std::sqrt(kin.alpha);
  const double sb = std::sqrt(kin.beta);
  if (!k.is_infinite()) {
    return -0.25 * square(z.z12 / (n1 * sa) + (q[2] / (n2 * sb)) * (q[1] + q[0] / rep.solution->ck));
  }
  // In the k -> infinity limit the companion ratio collapses and the energy
  // takes one of two closed forms split at wp = 1 (inclusive below).
  if (wp <= 1.0) {
    return -0.25 * square(q[0] * (q[1] + q[2]) / (n1 * sa) + z.z23 / (n2 * sb));
  }
  return -0.25 * square(z.z12 / (n1 * sa) + q[2] * (q[0] + q[1]) / (n2 * sb));
}

Spectrum spectrum(const ThreeBodySystem& system, const SpectrumOptions& options) {
  if (options.n_max < 1) throw std::invalid_argument("spectrum: n_max >= 1 required");
  if (options.k_max < 2) throw std::invalid_argument("spectrum: k_max >= 2 required");
  if (!geom::check_stability(system).stable) {
    throw unstable_error("spectrum: no arrangement of the system admits a feasible geometry");
  }

  Spectrum out;
  out.systems = options.scan_arrangements ? arrangements(system)
                                          : std::vector<ThreeBodySystem>{system};

  const std::size_t per_arr = static_cast<std::size_t>(options.n_max) * options.n_max;
  const std::size_t points = out.systems.size() * per_arr;
  std::vector<std::vector<SpectrumEntry>> slots(points);

  for_index(points, options.exec, [&](std::size_t idx) {
    const std::size_t arr = idx / per_arr;
    const int n1 = static_cast<int>((idx % per_arr) / options.n_max) + 1;
    const int n2 = static_cast<int>(idx % options.n_max) + 1;
    const ThreeBodySystem& sys = out.systems[arr];

    auto& local = slots[idx];
    const auto e_inf = bound_energy(sys, n1, n2, geom::KOrder::infinity());
    int settled = 0;
    for (int k = 2; k <= options.k_max; ++k) {
      const auto e = bound_energy(sys, n1, n2, geom::KOrder(k));
      if (!e) {
        settled = 0;
        continue;
      }
      local.push_back({0, arr, n1, n2, 0, 0, geom::KOrder(k), *e});
      // Finite-k values approach the limit value; once they sit within
      // 1e-12 of it three times in a row the remaining scan adds nothing.
      if (e_inf && std::fabs(*e - *e_inf) < 1e-12) {
        if (++settled >= 3) break;
      } else {
        settled = 0;
      }
    }
    if (e_inf) {
      local.push_back({0, arr, n1, n2, 0, 0, geom::KOrder::infinity(), *e_inf});
    }
  });

  for (auto& slot : slots) {
    out.entries.insert(out.entries.end(), slot.begin(), slot.end());
  }
  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    if (out.entries[i].energy < out.entries[out.infimum_index].energy) out.infimum_index = i;
  }
  return out;
}

double radial_wavefunction(int n, int l, double a0, double r) {
  if (l < 0 || n < l + 1) throw std::invalid_argument("radial_wavefunction: n >= l + 1 >= 1 required");
  if (!(a0 < 0.0)) throw std::domain_error("radial_wavefunction: repulsive coupling has no bound state");
  if (!(r > 0.0)) throw std::domain_error("radial_wavefunction: r > 0 required");
  // 2 r sqrt(-B0) with B0 = -a0^2 / (4 n^2)
  const double zz = std::fabs(a0) * r / n;
  return specfun::whittaker_m(n, l + 0.5, zz);
}

}  // namespace coulomb3::kappa0
