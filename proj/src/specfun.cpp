#include "coulomb3/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

// The reflection combination behind bessel_k subtracts two exponentially
// large values to produce an exponentially small one, so the kernels here
// accumulate in long double; the interface stays double.

namespace coulomb3::specfun {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

void check_contract(const AccuracyContract& acc) {
  if (!(acc.target > 0.0) || acc.max_terms < 1) {
    throw std::invalid_argument("accuracy contract: target must be > 0 and max_terms >= 1");
  }
}

// Stirling series with the argument shifted above 20. The Bernoulli tail
// below is accurate to ~1e-24 there, well past long double resolution.
long double ln_gamma_shifted(long double x) {
  static const long double bern[] = {
      1.0L / 12.0L,     -1.0L / 360.0L,    1.0L / 1260.0L,  -1.0L / 1680.0L,
      1.0L / 1188.0L,   -691.0L / 360360.0L, 1.0L / 156.0L, -3617.0L / 122400.0L,
  };
  long double shift = 0.0L;
  while (x < 20.0L) {
    shift += std::log(x);
    x += 1.0L;
  }
  long double r = (x - 0.5L) * std::log(x) - x + 0.5L * std::log(2.0L * kPi);
  long double inv = 1.0L / x;
  long double inv2 = inv * inv;
  long double p = inv;
  for (long double b : bern) {
    r += b * p;
    p *= inv2;
  }
  return r - shift;
}

struct SignedLog {
  long double log_abs;
  int sign;
};

// log|Gamma(x)| with sign, any non-pole real x.
SignedLog signed_ln_gamma(long double x) {
  if (x > 0.0L) return {ln_gamma_shifted(x), 1};
  if (x == std::floor(x)) {
    throw std::domain_error("gamma: pole at nonpositive integer argument");
  }
  // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
  long double s = std::sin(kPi * x);
  return {std::log(kPi / std::fabs(s)) - ln_gamma_shifted(1.0L - x), s > 0.0L ? 1 : -1};
}

long double bessel_i_impl(long double nu, long double z, long double tol, int max_terms) {
  const long double q = 0.25L * z * z;
  SignedLog g = signed_ln_gamma(1.0L + nu);
  long double term = g.sign * std::exp(nu * std::log(0.5L * z) - g.log_abs);
  long double sum = term;
  for (int m = 0; m < max_terms; ++m) {
    term *= q / ((m + 1.0L) * (m + 1.0L + nu));
    sum += term;
    // For negative orders the first few denominators flip sign; only stop
    // once the term index has passed -nu and the series is regular.
    if (m + 1.0L + nu > 0.0L && std::fabs(term) <= tol * std::fabs(sum)) {
      return sum;
    }
  }
  throw accuracy_error("bessel_i: series did not converge within " + std::to_string(max_terms) +
                       " terms");
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be positive");
  return static_cast<double>(ln_gamma_shifted(static_cast<long double>(x)));
}

double gamma_ratio(int n, double nu) {
  if (n < 1) throw std::domain_error("gamma_ratio: n must be a positive integer");
  if (!(nu > 0.0) || !(nu < static_cast<double>(n))) {
    throw std::domain_error("gamma_ratio: requires 0 < nu < n");
  }
  long double num = ln_gamma_shifted(static_cast<long double>(n) + nu);
  long double den = ln_gamma_shifted(static_cast<long double>(n) - nu);
  return static_cast<double>(std::exp(num - den));
}

double bessel_i(double nu, double z, const AccuracyContract& acc) {
  check_contract(acc);
  if (!(z > 0.0)) throw std::domain_error("bessel_i: requires z > 0");
  if (nu < 0.0 && nu == std::floor(nu)) {
    throw std::domain_error("bessel_i: negative integer order not supported");
  }
  return static_cast<double>(
      bessel_i_impl(nu, z, 0.1L * static_cast<long double>(acc.target), acc.max_terms));
}

double bessel_k(double nu, double z, const AccuracyContract& acc) {
  check_contract(acc);
  if (!(z > 0.0)) throw std::domain_error("bessel_k: requires z > 0");
  const double anu = std::fabs(nu);
  if (std::fabs(anu - std::round(anu)) <= 1e-6) {
    throw std::domain_error(
        "bessel_k: order within guard band 1e-6 of an integer; "
        "the reflection combination degenerates");
  }
  // The subtraction cancels roughly e^{2z} of each term's magnitude, so both
  // series are pushed to extended-precision resolution regardless of the
  // contract's (looser) target.
  const long double lnu = static_cast<long double>(anu);
  const long double lz = static_cast<long double>(z);
  const long double tol = 1e-21L;
  long double diff =
      bessel_i_impl(-lnu, lz, tol, acc.max_terms) - bessel_i_impl(lnu, lz, tol, acc.max_terms);
  return static_cast<double>(0.5L * kPi * diff / std::sin(lnu * kPi));
}

double kummer_1f1(double a, double b, double z, const AccuracyContract& acc) {
  check_contract(acc);
  if (b <= 0.0 && b == std::floor(b)) {
    throw std::domain_error("kummer_1f1: b must not be zero or a negative integer");
  }
  long double term = 1.0L;
  long double sum = 1.0L;
  const long double tol = 0.1L * static_cast<long double>(acc.target);
  for (int j = 0; j < acc.max_terms; ++j) {
    if (a + j == 0.0) return static_cast<double>(sum);  // terminating series
    term *= (static_cast<long double>(a) + j) / (static_cast<long double>(b) + j) *
            static_cast<long double>(z) / (j + 1.0L);
    sum += term;
    if (std::fabs(term) <= tol * std::fabs(sum)) return static_cast<double>(sum);
  }
  throw accuracy_error("kummer_1f1: series did not converge within " +
                       std::to_string(acc.max_terms) + " terms");
}

double whittaker_m(double n, double mu, double z, const AccuracyContract& acc) {
  if (!(z > 0.0)) throw std::domain_error("whittaker_m: requires z > 0");
  const double b = 2.0 * mu + 1.0;
  if (b <= 0.0 && b == std::floor(b)) {
    throw std::domain_error("whittaker_m: 2mu+1 must not be zero or a negative integer");
  }
  const double prefactor = std::exp((mu + 0.5) * std::log(z) - 0.5 * z);
  if (prefactor == 0.0) return 0.0;
  return prefactor * kummer_1f1(mu + 0.5 - n, b, z, acc);
}

}  // namespace coulomb3::specfun
