#pragma once

#include <stdexcept>

namespace coulomb3::specfun {

/// Thrown when a series fails to meet the accuracy target within the
/// allotted number of terms.
class accuracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Series evaluation contract: relative-error target and term budget.
struct AccuracyContract {
  double target = 1e-12;
  int max_terms = 500;
};

/// Natural log of the Gamma function, x > 0.
double ln_gamma(double x);

/// Gamma(n + nu) / Gamma(n - nu) for integer n >= 1 and 0 < nu < n,
/// evaluated through log-Gamma differences.
double gamma_ratio(int n, double nu);

/// Modified Bessel function of the first kind I_nu(z), z > 0.
/// Negative non-integer orders are accepted (they feed the reflection
/// combination used by bessel_k); negative integer orders are rejected.
double bessel_i(double nu, double z, const AccuracyContract& acc = {});

/// Modified Bessel function of the second kind K_nu(z), z > 0, computed as
/// (pi/2) (I_{-nu} - I_nu) / sin(nu pi). Symmetric under nu <-> -nu.
/// Orders within 1e-6 of an integer are rejected (the reflection
/// combination degenerates there). The subtraction cancels ~e^{2z} of
/// precision; full accuracy holds for z up to ~14 and degrades beyond.
double bessel_k(double nu, double z, const AccuracyContract& acc = {});

/// Kummer confluent hypergeometric series 1F1(a; b; z).
/// b must not be zero or a negative integer.
double kummer_1f1(double a, double b, double z, const AccuracyContract& acc = {});

/// Whittaker function M_{n,mu}(z) = z^{mu+1/2} e^{-z/2} 1F1(mu+1/2-n; 2mu+1; z),
/// z > 0. For integer n >= mu + 1/2 the series terminates. 2mu+1 must not be
/// zero or a negative integer.
double whittaker_m(double n, double mu, double z, const AccuracyContract& acc = {});

}  // namespace coulomb3::specfun
