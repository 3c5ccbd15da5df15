#pragma once

#include <complex>
#include <string>
#include <vector>

namespace spinbath {

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz). Upper half plane by a
/// 40-term Weideman rational expansion (|z| < 7) or the Laplace continued
/// fraction; lower half plane through w(z) = 2 exp(-z^2) - w(-z).
std::complex<double> faddeeva(std::complex<double> z);

/// erf on |Re z| <= 30. Odd and conjugate symmetric by construction; real
/// input gives a real result, imaginary input an imaginary one. Throws
/// DomainError outside that strip or when the result would overflow
/// (use damped_erf_im / damped_erf_pair there).
std::complex<double> erf_complex(std::complex<double> z);

/// X(a, tau) = exp(a^2 - tau^2) Im erf(a + i tau), computed as
/// -Im[exp(-2i a tau) w(-tau + i a)] so that no large exponential is formed.
double damped_erf_im(double a, double tau);

/// exp(a^2 - tau^2) [erf(a + i tau) - erf(a - i tau)] = 2i X(a, tau).
/// Requires a >= 0.
std::complex<double> damped_erf_pair(double a, double tau);

/// Gamma(0, z) = E1(z) on the principal branch (cut along the negative real
/// axis). Series for |z| < 4, continued fraction otherwise. z = 0 throws
/// DomainError.
std::complex<double> gamma0(std::complex<double> z);

/// exp(z) Gamma(0, z), without forming exp(z) separately when |z| >= 4.
std::complex<double> gamma0_scaled(std::complex<double> z);

/// The two branches, exposed so that their overlap can be checked.
/// gamma0_series returns Gamma(0, z); gamma0_continued_fraction returns
/// exp(z) Gamma(0, z).
std::complex<double> gamma0_series(std::complex<double> z);
std::complex<double> gamma0_continued_fraction(std::complex<double> z);

/// x exp(x) E1(x) for real x >= 0; tends to 0 as x -> 0 and to 1 as x -> inf.
double x_exp_e1(double x);

/// First `terms` terms of Gamma(a, z) ~ z^{a-1} exp(-z) sum_k (a-1)...(a-k) / z^k.
std::complex<double> gamma_asymptotic(double a, std::complex<double> z, int terms);

/// Oscillatory remainder M(t; mu, gb) of the eta closed form, evaluated with
/// alpha = 1. Integrates along the ray s = delta + u, u >= 0, where
/// delta = sqrt(2 + gb) mu + i t / sqrt(2 + gb). Requires mu > 0 (the
/// integral diverges logarithmically at mu = 0, which throws DomainError),
/// t >= 0 and gb > -2. abs_tol applies to M itself.
double m_function(double t, double mu, double gb, double abs_tol = 1e-10);

/// One row of the kernel self-test table.
struct KernelCheck {
  std::string name;
  std::complex<double> value;
  std::complex<double> reference;
  double relative_error = 0.0;
  int target_digits = 12;

  bool passed() const;
};

/// Twelve fixed kernel evaluations against high-precision references.
std::vector<KernelCheck> kernel_selftest();

}  // namespace spinbath
