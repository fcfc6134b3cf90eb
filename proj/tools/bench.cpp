// Timing comparison of the serial reference path against the OpenMP path
// for the two grid kernels: the kappa=1 matching scan and the kappa=0
// spectrum grid. Both paths must agree bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#ifdef COULOMB3_HAVE_OPENMP
#include <omp.h>
#endif

#include "coulomb3/cli.hpp"
#include "coulomb3/kappa0.hpp"
#include "coulomb3/kappa1.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <class F>
double timed(F&& fn) {
  const auto t0 = clock_type::now();
  fn();
  return seconds_since(t0);
}

bool same_samples(const coulomb3::kappa1::ScanCurve& a, const coulomb3::kappa1::ScanCurve& b) {
  if (a.samples.size() != b.samples.size()) return false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const auto& x = a.samples[i];
    const auto& y = b.samples[i];
    const bool lhs_same = (std::isnan(x.lhs) && std::isnan(y.lhs)) || x.lhs == y.lhs;
    const bool rhs_same = (std::isnan(x.rhs) && std::isnan(y.rhs)) || x.rhs == y.rhs;
    if (x.wp != y.wp || !lhs_same || !rhs_same || x.feasible != y.feasible) return false;
  }
  return true;
}

bool same_entries(const coulomb3::kappa0::Spectrum& a, const coulomb3::kappa0::Spectrum& b) {
  if (a.entries.size() != b.entries.size() || a.infimum_index != b.infimum_index) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (!(a.entries[i].k == b.entries[i].k) || a.entries[i].energy != b.entries[i].energy ||
        a.entries[i].n1 != b.entries[i].n1 || a.entries[i].n2 != b.entries[i].n2) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace coulomb3;

  int scan_steps = 2'000'000;
  int n_max = 40;
  if (argc > 1) scan_steps = std::stoi(argv[1]);
  if (argc > 2) n_max = std::stoi(argv[2]);

#ifdef COULOMB3_HAVE_OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both paths run serially\n");
#endif

  const auto helium = cli::find_catalog("helium").system;
  const auto psminus = cli::find_catalog("ps-minus").system;
  const kappa0::QuantumNumbers qn;

  std::printf("\nkappa=1 matching scan, helium, k=3, %d samples\n", scan_steps);
  kappa1::ScanCurve serial_curve, parallel_curve;
  const double upper = std::pow(2.0, -1.0 / 3.0);
  const double t_scan_serial = timed([&] {
    serial_curve = kappa1::scan_matching(helium, qn, 3, 1e-4, upper, scan_steps, Exec::serial);
  });
  const double t_scan_parallel = timed([&] {
    parallel_curve = kappa1::scan_matching(helium, qn, 3, 1e-4, upper, scan_steps, Exec::parallel);
  });
  std::printf("  serial   %8.3f s\n", t_scan_serial);
  std::printf("  parallel %8.3f s   speedup %.2fx   bit-identical: %s\n", t_scan_parallel,
              t_scan_serial / t_scan_parallel, same_samples(serial_curve, parallel_curve) ? "yes" : "NO");

  std::printf("\nkappa=0 spectrum grid, ps-minus, n_max=%d, all arrangements\n", n_max);
  kappa0::SpectrumOptions sopt;
  sopt.n_max = n_max;
  sopt.scan_arrangements = true;
  kappa0::Spectrum serial_spec, parallel_spec;
  sopt.exec = Exec::serial;
  const double t_spec_serial = timed([&] { serial_spec = kappa0::spectrum(psminus, sopt); });
  sopt.exec = Exec::parallel;
  const double t_spec_parallel = timed([&] { parallel_spec = kappa0::spectrum(psminus, sopt); });
  std::printf("  serial   %8.3f s (%zu entries)\n", t_spec_serial, serial_spec.entries.size());
  std::printf("  parallel %8.3f s   speedup %.2fx   bit-identical: %s\n", t_spec_parallel,
              t_spec_serial / t_spec_parallel, same_entries(serial_spec, parallel_spec) ? "yes" : "NO");

  return 0;
}
