#include "spinbath/infinite_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinbath/errors.hpp"
#include "spinbath/finite_dynamics.hpp"
#include "spinbath/parallel.hpp"
#include "spinbath/quadrature.hpp"
#include "spinbath/special_functions.hpp"

namespace spinbath {

namespace {

using Vec3 = std::array<double, 3>;
using Integrand3 = std::function<Vec3(double r2, double m)>;

constexpr double kSqrtPi = 1.772453850905516027298167483341145;
// Gaussian tails beyond e^{-46} (about 1e-20) are dropped by the panel rule.
constexpr double kTailExponent = 46.0;
constexpr int kPanelPoints = 32;
constexpr int kPanelRefinements = 4;

double max_abs_diff(const Vec3& x, const Vec3& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

Vec3 tensor_estimate(const Integrand3& f, const GaussLimitParams& p, int nh, int nl,
                     bool radial_only) {
  const double a = 2.0 + p.gb;
  const double b = 2.0 + p.gbd;
  const GaussRule& lag = gauss_laguerre(nl);
  Vec3 total{};
  if (radial_only) {
    for (std::size_t k = 0; k < lag.nodes.size(); ++k) {
      if (lag.weights[k] == 0.0) continue;
      const Vec3 v = f(lag.nodes[k] / a, 0.0);
      for (int c = 0; c < 3; ++c) total[c] += lag.weights[k] * v[c];
    }
    return total;
  }
  const GaussRule& her = gauss_hermite(nh);
  const double inv_root_b = 1.0 / std::sqrt(b);
  for (std::size_t i = 0; i < her.nodes.size(); ++i) {
    if (her.weights[i] == 0.0) continue;
    const double m = her.nodes[i] * inv_root_b;
    Vec3 inner{};
    for (std::size_t k = 0; k < lag.nodes.size(); ++k) {
      if (lag.weights[k] == 0.0) continue;
      const Vec3 v = f(lag.nodes[k] / a, m);
      for (int c = 0; c < 3; ++c) inner[c] += lag.weights[k] * v[c];
    }
    for (int c = 0; c < 3; ++c) total[c] += her.weights[i] * inner[c];
  }
  for (double& v : total) v /= kSqrtPi;
  return total;
}

// Composite Gauss-Legendre over r in [0, R] with density 2a r e^{-a r^2} and
// m in [-M, M] with density sqrt(b/pi) e^{-b m^2}.
Vec3 panel_estimate(const Integrand3& f, const GaussLimitParams& p, int panels_r, int panels_m,
                    bool radial_only) {
  const double a = 2.0 + p.gb;
  const double b = 2.0 + p.gbd;
  const GaussRule& gl = gauss_legendre(kPanelPoints);

  std::vector<double> r_nodes;
  std::vector<double> r_weights;
  const double r_max = std::sqrt(kTailExponent / a);
  const double hr = 0.5 * r_max / panels_r;
  for (int k = 0; k < panels_r; ++k) {
    const double c = (2 * k + 1) * hr;
    for (int i = 0; i < kPanelPoints; ++i) {
      const double r = c + hr * gl.nodes[i];
      r_nodes.push_back(r * r);
      r_weights.push_back(hr * gl.weights[i] * 2.0 * a * r * std::exp(-a * r * r));
    }
  }

  const auto radial = [&](double m) {
    Vec3 s{};
    for (std::size_t k = 0; k < r_nodes.size(); ++k) {
      const Vec3 v = f(r_nodes[k], m);
      for (int c = 0; c < 3; ++c) s[c] += r_weights[k] * v[c];
    }
    return s;
  };
  if (radial_only) return radial(0.0);

  const double m_max = std::sqrt(kTailExponent / b);
  const double hm = m_max / panels_m;
  const double norm = std::sqrt(b) / kSqrtPi;
  Vec3 total{};
  for (int k = 0; k < panels_m; ++k) {
    const double c = -m_max + (2 * k + 1) * hm;
    for (int i = 0; i < kPanelPoints; ++i) {
      const double m = c + hm * gl.nodes[i];
      const double w = hm * gl.weights[i] * norm * std::exp(-b * m * m);
      const Vec3 v = radial(m);
      for (int c2 = 0; c2 < 3; ++c2) total[c2] += w * v[c2];
    }
  }
  return total;
}

Vec3 expect3(const Integrand3& f, const GaussLimitParams& p, const QuadratureSpec& q,
             bool radial_only, double omega) {
  p.validate();
  q.validate();
  int nh = q.hermite_order;
  int nl = q.laguerre_order;
  Vec3 prev = tensor_estimate(f, p, nh, nl, radial_only);
  while (nl < q.max_refine || (!radial_only && nh < q.max_refine)) {
    nh = std::min(2 * nh, q.max_refine);
    nl = std::min(2 * nl, q.max_refine);
    const Vec3 next = tensor_estimate(f, p, nh, nl, radial_only);
    if (max_abs_diff(prev, next) < q.abs_tol) return next;
    prev = next;
  }

  // Oscillatory integrands outrun the global rules; switch to panels that
  // keep the phase change per panel bounded.
  const double r_len = std::sqrt(kTailExponent / (2.0 + p.gb));
  const double m_len = 2.0 * std::sqrt(kTailExponent / (2.0 + p.gbd));
  int panels_r = std::max(4, static_cast<int>(std::ceil(omega * r_len / 20.0)) + 2);
  int panels_m = std::max(8, static_cast<int>(std::ceil(omega * m_len / 20.0)) + 4);
  prev = panel_estimate(f, p, panels_r, panels_m, radial_only);
  for (int refine = 0; refine < kPanelRefinements; ++refine) {
    panels_r *= 2;
    panels_m *= 2;
    const Vec3 next = panel_estimate(f, p, panels_r, panels_m, radial_only);
    if (max_abs_diff(prev, next) < q.abs_tol) return next;
    prev = next;
  }
  const Vec3 last = panel_estimate(f, p, 2 * panels_r, 2 * panels_m, radial_only);
  throw ToleranceError("limit expectation did not converge to " + std::to_string(q.abs_tol),
                       prev[0], last[0]);
}

Integrand3 response_integrand(double t, const GaussLimitParams& p) {
  return [t, p](double r2, double m) {
    const double mu = p.mu + p.gamma * m;
    const double s = std::sqrt(mu * mu + r2);
    const double half = sinc(t * s);
    return Vec3{
        2.0 * r2 * t * t * half * half,      // eta: 2 r^2 sin^2(t s) / s^2
        std::cos(2.0 * t * s),               // zeta
        mu * 2.0 * t * sinc(2.0 * t * s),    // xi: mu sin(2 t s) / s
    };
  };
}

void require_gamma_zero(const GaussLimitParams& p, const char* what) {
  if (p.gamma != 0.0) {
    throw InvalidArgumentError(std::string(what) + " needs gamma = 0; use the quadrature route");
  }
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgumentError("t must be finite and >= 0");
}

}  // namespace

GaussLimitParams GaussLimitParams::from_model(const ModelParams& p) {
  p.validate();
  const ModelParams s = p.in_alpha_units();
  return GaussLimitParams{s.mu, s.gamma, s.g * s.beta, s.g * s.beta * s.delta};
}

void GaussLimitParams::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(gamma) || !std::isfinite(gb) ||
      !std::isfinite(gbd)) {
    throw DomainError("limit parameters must be finite");
  }
  if (!(gb > -2.0)) {
    throw DomainError("g*beta <= -2: the N -> infinity integrals diverge");
  }
  if (!(gbd > -2.0)) {
    throw DomainError("g*beta*delta <= -2: the N -> infinity integrals diverge");
  }
}

void QuadratureSpec::validate() const {
  if (hermite_order < 8 || laguerre_order < 8) {
    throw InvalidArgumentError("quadrature orders must be >= 8");
  }
  if (max_refine < std::max(hermite_order, laguerre_order)) {
    throw InvalidArgumentError("max_refine must be >= the starting orders");
  }
  if (!(abs_tol >= 1e-13)) throw InvalidArgumentError("abs_tol must be >= 1e-13");
}

double zbar(const GaussLimitParams& p) {
  p.validate();
  return 2.0 * std::numbers::sqrt2 / ((2.0 + p.gb) * std::sqrt(2.0 + p.gbd));
}

double expectation(const LimitIntegrand& f, const GaussLimitParams& p, const QuadratureSpec& q,
                   bool radial_only, double omega) {
  const Integrand3 wrapped = [&f](double r2, double m) { return Vec3{f(r2, m), 0.0, 0.0}; };
  return expect3(wrapped, p, q, radial_only, omega)[0];
}

ResponseFunctions response_quadrature(double t, const GaussLimitParams& p,
                                      const QuadratureSpec& q) {
  require_time(t);
  if (t == 0.0) return {};
  // For gamma = 0 the integrand does not depend on m and the m integral is
  // just the normalization, so delta drops out.
  const bool radial_only = p.gamma == 0.0;
  const double omega = 2.0 * t * std::max(1.0, std::abs(p.gamma));
  const Vec3 v = expect3(response_integrand(t, p), p, q, radial_only, omega);
  return ResponseFunctions{v[0], v[1], v[2]};
}

double eta_quadrature(double t, const GaussLimitParams& p, const QuadratureSpec& q) {
  return response_quadrature(t, p, q).eta;
}

double zeta_quadrature(double t, const GaussLimitParams& p, const QuadratureSpec& q) {
  return response_quadrature(t, p, q).zeta;
}

double xi_quadrature(double t, const GaussLimitParams& p, const QuadratureSpec& q) {
  return response_quadrature(t, p, q).xi;
}

double zeta_closed(double t, const GaussLimitParams& p) {
  p.validate();
  require_gamma_zero(p, "zeta_closed");
  require_time(t);
  const double a = 2.0 + p.gb;
  const double x = damped_erf_im(p.mu * std::sqrt(a), t / std::sqrt(a));
  return std::cos(2.0 * p.mu * t) - t * std::sqrt(std::numbers::pi / a) * x;
}

double xi_closed(double t, const GaussLimitParams& p) {
  p.validate();
  require_gamma_zero(p, "xi_closed");
  require_time(t);
  const double a = 2.0 + p.gb;
  const double x = damped_erf_im(p.mu * std::sqrt(a), t / std::sqrt(a));
  return p.mu * std::sqrt(std::numbers::pi * a) * x;
}

double eta_closed(double t, const GaussLimitParams& p) {
  p.validate();
  require_gamma_zero(p, "eta_closed");
  require_time(t);
  if (!(p.mu > 0.0)) throw DomainError("eta_closed needs mu > 0; use eta_quadrature");
  if (t == 0.0) return 0.0;
  const double a = 2.0 + p.gb;
  const double mu = p.mu;
  const double x0 = a * mu * mu;
  const double damped = damped_erf_im(mu * std::sqrt(a), t / std::sqrt(a));
  // e^{x0} Gamma(0, x0 + 2i mu t) = e^{-2i mu t} [e^z Gamma(0, z)]
  const Complex z(x0, 2.0 * mu * t);
  const Complex shifted = std::polar(1.0, -2.0 * mu * t) * gamma0_scaled(z);
  const double m = m_function(t, mu, p.gb, 1e-11 / std::max(1.0, mu * mu));
  return 1.0 - std::cos(2.0 * mu * t) + t * std::sqrt(std::numbers::pi / a) * damped -
         x_exp_e1(x0) + x0 * shifted.real() + mu * mu * m;
}

ResponseFunctions response_closed(double t, const GaussLimitParams& p) {
  return ResponseFunctions{eta_closed(t, p), zeta_closed(t, p), xi_closed(t, p)};
}

BlochVector bloch_from_response(const BlochVector& b0, const ResponseFunctions& r) {
  const double c = r.zeta + 0.5 * r.eta;
  return BlochVector{b0.l1 * c + b0.l2 * r.xi, b0.l2 * c - b0.l1 * r.xi, b0.l3 * (1.0 - r.eta)};
}

BlochVector bloch_infinite(double t, const GaussLimitParams& p, const BlochVector& b0,
                           const QuadratureSpec& q) {
  b0.validate();
  const bool closed = p.gamma == 0.0 && p.mu > 0.0;
  const ResponseFunctions r = closed ? response_closed(t, p) : response_quadrature(t, p, q);
  return bloch_from_response(b0, r);
}

double eta_asymptote(const GaussLimitParams& p) {
  p.validate();
  require_gamma_zero(p, "eta_asymptote");
  return x_exp_e1((2.0 + p.gb) * p.mu * p.mu);
}

double eta_asymptote_gamma(const GaussLimitParams& p, const QuadratureSpec& q) {
  p.validate();
  q.validate();
  if (p.gamma == 0.0) return 1.0 - eta_asymptote(p);
  const double a = 2.0 + p.gb;
  const double b = 2.0 + p.gbd;
  const double norm = std::sqrt(b) / kSqrtPi;
  const auto integrand = [&](double m) {
    const double mu = p.mu + p.gamma * m;
    return norm * std::exp(-b * m * m) * x_exp_e1(a * mu * mu);
  };
  const double m_max = std::sqrt(kTailExponent / b);
  // S(x) ~ x log(1/x) is not smooth where mu + gamma m = 0; split there.
  const double kink = -p.mu / p.gamma;
  double total = 0.0;
  if (kink > -m_max && kink < m_max) {
    total = integrate_adaptive_real(integrand, -m_max, kink, 0.5 * q.abs_tol, 1e-14) +
            integrate_adaptive_real(integrand, kink, m_max, 0.5 * q.abs_tol, 1e-14);
  } else {
    total = integrate_adaptive_real(integrand, -m_max, m_max, q.abs_tol, 1e-14);
  }
  return 1.0 - total;
}

BlochVector asymptotic_bloch(const GaussLimitParams& p, const BlochVector& b0) {
  b0.validate();
  const double e = eta_asymptote(p);
  return BlochVector{0.5 * b0.l1 * (1.0 - e), 0.5 * b0.l2 * (1.0 - e), b0.l3 * e};
}

BlochVector short_time(double t, const GaussLimitParams& p, const BlochVector& b0) {
  p.validate();
  require_time(t);
  const double a = 2.0 + p.gb;
  const double t2 = t * t;
  const Complex ratio =
      std::exp(Complex(-t2 / a - 0.5 * p.gamma * p.gamma * t2, 2.0 * p.mu * t));
  const Complex c = Complex(b0.l1, -b0.l2) * ratio;
  return BlochVector{c.real(), -c.imag(), b0.l3 * std::exp(-2.0 * t2 / a)};
}

double decoherence_time(const GaussLimitParams& p) {
  p.validate();
  const double a = 2.0 + p.gb;
  if (p.gamma == 0.0) return std::sqrt(a);
  return std::sqrt(2.0 * a / (2.0 + p.gamma * p.gamma * a));
}

double ising_coherence(double t, const GaussLimitParams& p) {
  p.validate();
  return std::exp(-p.gamma * p.gamma * t * t / (2.0 + p.gbd));
}

Trajectory trajectory_infinite(const ModelParams& p, const BlochVector& b0,
                               std::span<const double> times, const QuadratureSpec& q,
                               bool emit_eta) {
  const GaussLimitParams gp = GaussLimitParams::from_model(p);
  gp.validate();
  q.validate();
  b0.validate();
  validate_times(times);
  const bool closed = gp.gamma == 0.0 && gp.mu > 0.0;
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.bloch.resize(times.size());
  traj.purity.resize(times.size());
  if (emit_eta) traj.eta.resize(times.size());
  parallel_for(times.size(), [&](std::size_t k) {
    const double t = times[k] * p.alpha;
    const ResponseFunctions r = closed ? response_closed(t, gp) : response_quadrature(t, gp, q);
    traj.bloch[k] = bloch_from_response(b0, r);
    traj.purity[k] = purity(traj.bloch[k]);
    if (emit_eta) traj.eta[k] = r.eta;
  });
  return traj;
}

}  // namespace spinbath
