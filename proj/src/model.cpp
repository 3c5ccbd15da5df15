#include "spinbath/model.hpp"

#include <cmath>
#include <sstream>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidArgumentError(std::string(name) + " must be finite");
  }
}

}  // namespace

ModelParams ModelParams::in_alpha_units() const {
  ModelParams out = *this;
  out.mu = mu / alpha;
  out.gamma = gamma / alpha;
  out.g = g / alpha;
  out.beta = beta * alpha;
  out.alpha = 1.0;
  return out;
}

void ModelParams::validate() const {
  require_finite(mu, "mu");
  require_finite(gamma, "gamma");
  require_finite(alpha, "alpha");
  require_finite(g, "g");
  require_finite(delta, "delta");
  require_finite(beta, "beta");
  if (!(alpha > 0.0)) throw InvalidArgumentError("alpha must be > 0");
  if (beta < 0.0) throw InvalidArgumentError("beta must be >= 0");
  if (n_bath) {
    if (*n_bath <= 0) throw InvalidArgumentError("N must be positive");
    if (*n_bath % 2 != 0) {
      throw UnsupportedError("N must be even (got " + std::to_string(*n_bath) + ")");
    }
  }
}

bool ModelParams::gaussian_limit_converges() const noexcept {
  const double gb = g * beta;
  return gb > -2.0 && gb * delta > -2.0;
}

void BlochVector::validate() const {
  if (!std::isfinite(l1) || !std::isfinite(l2) || !std::isfinite(l3)) {
    throw InvalidStateError("Bloch vector has non-finite components");
  }
  if (norm_squared() > 1.0 + kStateSlack) {
    std::ostringstream os;
    os << "Bloch vector norm " << std::sqrt(norm_squared()) << " exceeds 1";
    throw InvalidStateError(os.str());
  }
}

void DensityMatrix2::validate() const {
  if (!std::isfinite(rho11) || !std::isfinite(rho22) || !std::isfinite(rho12.real()) ||
      !std::isfinite(rho12.imag())) {
    throw InvalidStateError("density matrix has non-finite entries");
  }
  if (rho11 < -kStateSlack || rho22 < -kStateSlack) {
    throw InvalidStateError("density matrix has a negative population");
  }
  if (std::abs(rho11 + rho22 - 1.0) > kStateSlack) {
    throw InvalidStateError("density matrix trace differs from 1");
  }
  if (std::norm(rho12) > rho11 * rho22 + kStateSlack) {
    throw InvalidStateError("density matrix is not positive semidefinite");
  }
}

DensityMatrix2 bloch_to_density(const BlochVector& b) {
  b.validate();
  DensityMatrix2 r;
  r.rho11 = 0.5 * (1.0 - b.l3);
  r.rho22 = 0.5 * (1.0 + b.l3);
  r.rho12 = Complex(0.5 * b.l1, -0.5 * b.l2);
  return r;
}

BlochVector density_to_bloch(const DensityMatrix2& r) {
  r.validate();
  return BlochVector{2.0 * r.rho12.real(), -2.0 * r.rho12.imag(), r.rho22 - r.rho11};
}

DensityMatrix2 pure_state(Complex a, Complex b) {
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidStateError("pure state amplitudes must not both vanish");
  }
  a /= n;
  b /= n;
  DensityMatrix2 r;
  r.rho11 = std::norm(a);
  r.rho22 = std::norm(b);
  r.rho12 = a * std::conj(b);
  return r;
}

double purity(const BlochVector& b) { return 0.5 * (1.0 + b.norm_squared()); }

}  // namespace spinbath
