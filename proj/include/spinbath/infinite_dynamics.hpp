#pragma once

#include <array>
#include <functional>
#include <span>

#include "spinbath/io.hpp"
#include "spinbath/model.hpp"

namespace spinbath {

/// Parameters of the N -> infinity limit, energies in units of alpha.
struct GaussLimitParams {
  double mu = 0.0;
  double gamma = 0.0;
  double gb = 0.0;   // g * beta
  double gbd = 0.0;  // g * beta * delta

  /// Rescales to alpha = 1 and drops N.
  static GaussLimitParams from_model(const ModelParams& p);

  /// Throws DomainError unless gb > -2 and gbd > -2 (the limit integrals
  /// diverge otherwise) and every field is finite.
  void validate() const;
};

struct QuadratureSpec {
  int hermite_order = 64;   // m direction
  int laguerre_order = 64;  // r^2 direction
  double abs_tol = 1e-10;
  int max_refine = 512;     // largest order tried before the panel fallback

  void validate() const;
};

/// 2 sqrt 2 / ((2 + gb) sqrt(2 + gbd)).
double zbar(const GaussLimitParams& p);

/// Integrand over the limiting bath variables: r2 = |z|^2 >= 0 and m real.
using LimitIntegrand = std::function<double(double r2, double m)>;

/// Thermal average of f over the limiting Gaussian measure, i.e.
/// Zbar^{-1} 4 sqrt(2/pi) int dm int r dr f e^{-(2 + gb) r^2 - (2 + gbd) m^2}.
/// The Boltzmann factor is part of the measure, so f = 1 gives 1.
/// Tensor Gauss-Hermite x Gauss-Laguerre, orders doubled until two
/// successive estimates agree to abs_tol; if max_refine is reached, composite
/// Gauss-Legendre panels sized to the oscillation frequency `omega` (an upper
/// bound on |d phase / dr| and |d phase / dm|) take over. Throws
/// ToleranceError when neither converges.
double expectation(const LimitIntegrand& f, const GaussLimitParams& p, const QuadratureSpec& q,
                   bool radial_only = false, double omega = 0.0);

/// eta, zeta and xi at one time, from the same quadrature.
struct ResponseFunctions {
  double eta = 0.0;
  double zeta = 1.0;
  double xi = 0.0;
};

/// Quadrature route, any gamma and delta. t is in units of 1/alpha.
ResponseFunctions response_quadrature(double t, const GaussLimitParams& p,
                                      const QuadratureSpec& q = {});
double eta_quadrature(double t, const GaussLimitParams& p, const QuadratureSpec& q = {});
double zeta_quadrature(double t, const GaussLimitParams& p, const QuadratureSpec& q = {});
double xi_quadrature(double t, const GaussLimitParams& p, const QuadratureSpec& q = {});

/// Closed forms for gamma = 0. zeta and xi accept mu = 0; eta needs mu > 0
/// and throws DomainError otherwise.
double eta_closed(double t, const GaussLimitParams& p);
double zeta_closed(double t, const GaussLimitParams& p);
double xi_closed(double t, const GaussLimitParams& p);
ResponseFunctions response_closed(double t, const GaussLimitParams& p);

/// Bloch vector at time t: closed forms when gamma = 0 and mu > 0,
/// quadrature otherwise.
BlochVector bloch_from_response(const BlochVector& b0, const ResponseFunctions& r);
BlochVector bloch_infinite(double t, const GaussLimitParams& p, const BlochVector& b0,
                           const QuadratureSpec& q = {});

/// Long-time residual mu^2 (2 + gb) e^{mu^2 (2 + gb)} Gamma(0, mu^2 (2 + gb));
/// gamma = 0 only. Zero at mu = 0.
double eta_asymptote(const GaussLimitParams& p);

/// Long-time plateau of eta(t) with mu replaced by mu + gamma m:
/// 1 - <S((mu + gamma m)^2 (2 + gb))>_m with S(x) = x e^x E1(x). For gamma = 0
/// this is 1 - eta_asymptote(p).
double eta_asymptote_gamma(const GaussLimitParams& p, const QuadratureSpec& q = {});

/// (l1(0)(1 - eta_inf)/2, l2(0)(1 - eta_inf)/2, l3(0) eta_inf); gamma = 0 only.
BlochVector asymptotic_bloch(const GaussLimitParams& p, const BlochVector& b0);

/// Gaussian short-time laws: l3 / l3(0) = exp(-2t^2/(2 + gb)) and
/// (l1 - i l2)/(l1(0) - i l2(0)) = exp(-t^2/(2 + gb) - gamma^2 t^2 / 2 + 2i mu t).
/// For gamma != 0 the coherence law is meant for delta = 0.
BlochVector short_time(double t, const GaussLimitParams& p, const BlochVector& b0);

/// Gaussian time constant in units of 1/alpha: sqrt(2 + gb) for gamma = 0,
/// sqrt((4 + 2 gb) / (2 + gamma^2 (2 + gb))) otherwise.
double decoherence_time(const GaussLimitParams& p);

/// exp(-gamma^2 t^2 / (2 + gbd)), the coherence decay for Ising couplings
/// (mu = alpha = 0, delta >> 1).
double ising_coherence(double t, const GaussLimitParams& p);

/// Infinite-N trajectory for physical parameters; times in physical units
/// (1/energy), converted to units of 1/alpha internally. Parallel over t.
Trajectory trajectory_infinite(const ModelParams& p, const BlochVector& b0,
                               std::span<const double> times, const QuadratureSpec& q = {},
                               bool emit_eta = false);

}  // namespace spinbath
