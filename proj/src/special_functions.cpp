#include "spinbath/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "spinbath/errors.hpp"
#include "spinbath/quadrature.hpp"

namespace spinbath {

namespace {

using C = std::complex<double>;
using CL = std::complex<long double>;

constexpr int kWeidemanTerms = 40;
constexpr double kContinuedFractionRadius = 7.0;
constexpr double kInvSqrtPi = 0.564189583547756286948079451560772586;

struct WeidemanTable {
  double l = 0.0;
  std::array<double, kWeidemanTerms> a{};
};

// Coefficients of Weideman's rational expansion of w(z) in the variable
// (L + iz)/(L - iz): a discrete Fourier transform of
// exp(-t^2)(L^2 + t^2) sampled at t = L tan(theta/2).
WeidemanTable make_weideman_table() {
  constexpr int n = kWeidemanTerms;
  constexpr int m = 2 * n;
  constexpr int m2 = 2 * m;
  WeidemanTable table;
  const long double l = std::sqrt(n / std::sqrt(2.0L));
  table.l = static_cast<double>(l);
  std::array<long double, m2> f{};
  // f[0] = 0 (theta = -pi), then k = -m+1 .. m-1.
  for (int k = -m + 1; k <= m - 1; ++k) {
    const long double theta = k * std::numbers::pi_v<long double> / m;
    const long double t = l * std::tan(theta / 2);
    f[k + m] = std::exp(-t * t) * (l * l + t * t);
  }
  // fftshift, then the real part of the DFT at frequencies 1..n.
  std::array<long double, m2> shifted{};
  for (int i = 0; i < m2; ++i) shifted[i] = f[(i + m) % m2];
  for (int freq = 1; freq <= n; ++freq) {
    long double re = 0.0L;
    for (int i = 0; i < m2; ++i) {
      re += shifted[i] * std::cos(2 * std::numbers::pi_v<long double> * freq * i / m2);
    }
    table.a[freq - 1] = static_cast<double>(re / m2);
  }
  return table;
}

const WeidemanTable& weideman_table() {
  static const WeidemanTable table = make_weideman_table();
  return table;
}

C faddeeva_weideman(C z) {
  const WeidemanTable& tab = weideman_table();
  const C iz(-z.imag(), z.real());
  const C denom = tab.l - iz;
  const C zz = (tab.l + iz) / denom;
  C p = 0.0;
  for (int k = kWeidemanTerms - 1; k >= 0; --k) p = p * zz + tab.a[k];
  return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

// Laplace continued fraction w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...)))).
C faddeeva_continued_fraction(C z) {
  C r = 0.0;
  for (int k = 30; k >= 1; --k) r = (0.5 * k) / (z - r);
  return C(0.0, kInvSqrtPi) / (z - r);
}

C faddeeva_upper(C z) {
  return std::abs(z) < kContinuedFractionRadius ? faddeeva_weideman(z)
                                                : faddeeva_continued_fraction(z);
}

C erf_taylor(C z) {
  // erf z = (2/sqrt pi) sum (-1)^n z^{2n+1} / (n! (2n+1))
  const C z2 = z * z;
  C power = z;
  C sum = z;
  for (int n = 1; n < 60; ++n) {
    power *= -z2 / static_cast<double>(n);
    const C term = power / static_cast<double>(2 * n + 1);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 * kInvSqrtPi * sum;
}

constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;

}  // namespace

C faddeeva(C z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("faddeeva: non-finite argument");
  }
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  const C e = std::exp(-z * z);
  return 2.0 * e - faddeeva_upper(-z);
}

C erf_complex(C z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("erf_complex: non-finite argument");
  }
  if (std::abs(z.real()) > 30.0) {
    throw DomainError("erf_complex: |Re z| > 30; use damped_erf_pair");
  }
  const bool real_input = z.imag() == 0.0;
  const bool imag_input = z.real() == 0.0;
  const bool flip = z.real() < 0.0;
  const C zp = flip ? -z : z;

  C result;
  if (std::abs(zp) < 1.0) {
    result = erf_taylor(zp);
  } else {
    const double x = zp.real();
    const double y = zp.imag();
    if (y * y - x * x > 700.0) {
      throw DomainError("erf_complex: result overflows; use damped_erf_pair");
    }
    const C iz(-y, x);
    result = 1.0 - std::exp(-zp * zp) * faddeeva_upper(iz);
  }
  if (flip) result = -result;
  if (real_input) result.imag(0.0);
  if (imag_input) result.real(0.0);
  return result;
}

double damped_erf_im(double a, double tau) {
  const double aa = std::abs(a);
  const C w = faddeeva_upper(C(-tau, aa));
  const C phase = std::polar(1.0, -2.0 * aa * tau);
  return -(phase * w).imag();
}

C damped_erf_pair(double a, double tau) {
  if (a < 0.0) throw InvalidArgumentError("damped_erf_pair: a must be >= 0");
  return C(0.0, 2.0 * damped_erf_im(a, tau));
}

C gamma0_series(C z) {
  if (z == C(0.0, 0.0)) throw DomainError("Gamma(0, z) has a pole at z = 0");
  const CL zl(z.real(), z.imag());
  // E1(z) = -gamma - log z - sum_{k>=1} (-z)^k / (k k!)
  CL power = 1.0L;
  CL sum = 0.0L;
  for (int k = 1; k < 2000; ++k) {
    power *= -zl / static_cast<long double>(k);
    const CL term = power / static_cast<long double>(k);
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  const CL value = -kEulerGamma - std::log(zl) - sum;
  return C(static_cast<double>(value.real()), static_cast<double>(value.imag()));
}

C gamma0_continued_fraction(C z) {
  if (z == C(0.0, 0.0)) throw DomainError("Gamma(0, z) has a pole at z = 0");
  // exp(z) E1(z) = 1 / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(z + 7 - ...)))),
  // evaluated by the modified Lentz algorithm.
  constexpr double tiny = 1e-300;
  C f = z + 1.0;
  if (f == C(0.0, 0.0)) f = tiny;
  C c = f;
  C d = 0.0;
  for (int k = 1; k < 20000; ++k) {
    const double a = -static_cast<double>(k) * k;
    const C b = z + (2.0 * k + 1.0);
    d = b + a * d;
    if (d == C(0.0, 0.0)) d = tiny;
    c = b + a / c;
    if (c == C(0.0, 0.0)) c = tiny;
    d = 1.0 / d;
    const C delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return 1.0 / f;
  }
  throw ToleranceError("Gamma(0, z) continued fraction did not converge", 0.0,
                       std::abs(1.0 / f));
}

namespace {

// The continued fraction stalls next to the cut, where the series has no
// cancellation problem instead.
bool use_series(C z) {
  return std::abs(z) < 4.0 || (z.real() < 0.0 && std::abs(z.imag()) <= 10.0);
}

}  // namespace

C gamma0(C z) {
  if (z == C(0.0, 0.0)) throw DomainError("Gamma(0, z) has a pole at z = 0");
  if (use_series(z)) return gamma0_series(z);
  return std::exp(-z) * gamma0_continued_fraction(z);
}

C gamma0_scaled(C z) {
  if (z == C(0.0, 0.0)) throw DomainError("Gamma(0, z) has a pole at z = 0");
  if (use_series(z)) return std::exp(z) * gamma0_series(z);
  return gamma0_continued_fraction(z);
}

double x_exp_e1(double x) {
  if (!(x >= 0.0)) throw DomainError("x_exp_e1 needs x >= 0");
  if (x == 0.0) return 0.0;
  return x * gamma0_scaled(C(x, 0.0)).real();
}

C gamma_asymptotic(double a, C z, int terms) {
  if (terms < 1) throw InvalidArgumentError("gamma_asymptotic needs at least one term");
  C term = 1.0;
  C sum = 1.0;
  for (int k = 1; k < terms; ++k) {
    term *= (a - k) / z;
    sum += term;
  }
  return std::pow(z, a - 1.0) * std::exp(-z) * sum;
}

double m_function(double t, double mu, double gb, double abs_tol) {
  if (!(gb > -2.0)) throw DomainError("m_function needs g*beta > -2");
  if (!(t >= 0.0)) throw InvalidArgumentError("m_function needs t >= 0");
  if (!(mu > 0.0)) {
    throw DomainError("m_function diverges at mu = 0; evaluate eta by quadrature");
  }
  if (t == 0.0) return 0.0;
  const double root_a = std::sqrt(2.0 + gb);
  const double big_a = mu * root_a;
  const double theta = t / root_a;
  // Integrand of the damped ray integral, s = (A + u) + i theta:
  // exp(A^2 - (A+u)^2) exp(-2i (A+u) theta) / ((A+u)(A+u + 2i theta)).
  const auto integrand = [&](double u) {
    const double x = big_a + u;
    const C phase = std::polar(std::exp(-u * (2.0 * big_a + u)), -2.0 * x * theta);
    return phase / (x * C(x, 2.0 * theta));
  };
  // exp(-u(2A + u)) < 1e-20 beyond this point.
  const double upper = -big_a + std::sqrt(big_a * big_a + 46.0);
  const double prefactor = 2.0 * t * root_a;
  const AdaptiveResult r =
      integrate_adaptive(integrand, 0.0, upper, abs_tol / prefactor, 1e-13, 50000);
  // Re[2i t sqrt(a) I] = -2 t sqrt(a) Im I
  return -prefactor * r.value.imag();
}

bool KernelCheck::passed() const { return relative_error <= std::pow(10.0, -target_digits); }

std::vector<KernelCheck> kernel_selftest() {
  struct Case {
    const char* name;
    C value;
    C reference;
  };
  const Case cases[] = {
      {"erf(1)", erf_complex(1.0), C(0.84270079294971486934, 0.0)},
      {"erf(0.5+2i)", erf_complex(C(0.5, 2.0)),
       C(13.839985667741278683, -1.0429925008314202586)},
      {"erf(2.5-1.5i)", erf_complex(C(2.5, -1.5)),
       C(1.0004844145745747249, -0.0034035003087279405083)},
      {"w(1+i)", faddeeva(C(1.0, 1.0)), C(0.30474420525691259246, 0.20821893820283162729)},
      {"w(5.5+0.2i)", faddeeva(C(5.5, 0.2)),
       C(0.0039266104349453830086, 0.10421659175868454246)},
      {"w(0.3+7i)", faddeeva(C(0.3, 7.0)), C(0.079660680596963677079, 0.0033477724807732815043)},
      {"E1(1)", gamma0(1.0), C(0.21938393439552027368, 0.0)},
      {"E1(10)", gamma0(10.0), C(4.1569689296853242774e-6, 0.0)},
      {"E1(1+2i)", gamma0(C(1.0, 2.0)), C(-0.12678428559155967307, -0.03508158292818701625)},
      {"E1(0.5+20i)", gamma0(C(0.5, 20.0)),
       C(-0.02655430498384905124, -0.014321885717034198386)},
      {"damped_erf_pair(1.2,0.7)", damped_erf_pair(1.2, 0.7), C(0.0, 0.62182885560965662718)},
      {"x_exp_e1(1)", x_exp_e1(1.0), C(0.59634736232319407434, 0.0)},
  };
  std::vector<KernelCheck> out;
  for (const Case& c : cases) {
    KernelCheck k;
    k.name = c.name;
    k.value = c.value;
    k.reference = c.reference;
    k.relative_error = std::abs(c.value - c.reference) / std::abs(c.reference);
    out.push_back(k);
  }
  return out;
}

}  // namespace spinbath
