#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace spinbath {

/// Nodes and weights of an n-point Gauss rule.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Weight e^{-x^2} on the real line. Weights sum to sqrt(pi).
const GaussRule& gauss_hermite(int n);
/// Weight e^{-x} on [0, inf). Weights sum to 1.
const GaussRule& gauss_laguerre(int n);
/// Weight 1 on [-1, 1].
const GaussRule& gauss_legendre(int n);

/// Rules are built once per order (Golub-Welsch on the Jacobi matrix) and
/// kept for the life of the process; the returned references stay valid.

struct AdaptiveResult {
  std::complex<double> value;
  double error = 0.0;
  int intervals = 0;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b] with global bisection. Throws
/// ToleranceError when max_intervals is exhausted before
/// error <= max(abs_tol, rel_tol |value|).
AdaptiveResult integrate_adaptive(const std::function<std::complex<double>(double)>& f, double a,
                                  double b, double abs_tol, double rel_tol,
                                  int max_intervals = 20000);

/// Real-valued convenience wrapper.
double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, double rel_tol, int max_intervals = 20000);

}  // namespace spinbath
