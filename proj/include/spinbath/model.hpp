#pragma once

#include <complex>
#include <optional>

namespace spinbath {

using Complex = std::complex<double>;

/// Couplings of the central spin, the bath and the thermal state.
///
/// Energies (mu, gamma, g) and the transverse coupling alpha share one unit;
/// beta is an inverse energy. Unset n_bath means the N -> infinity limit.
struct ModelParams {
  double mu = 0.0;      // local field on the central spin
  double gamma = 0.0;   // longitudinal system-bath coupling
  double alpha = 1.0;   // transverse system-bath coupling
  double g = 0.0;       // intra-bath coupling (g > 0 antiferromagnetic)
  double delta = 0.0;   // bath anisotropy
  double beta = 0.0;    // inverse temperature, k_B = 1
  std::optional<int> n_bath;

  bool is_finite() const noexcept { return n_bath.has_value(); }

  /// Same physics with alpha = 1: energies divided by alpha, beta multiplied.
  ModelParams in_alpha_units() const;

  /// Throws InvalidArgumentError unless alpha > 0, beta >= 0, everything is
  /// finite and n_bath (when set) is positive. Odd N raises UnsupportedError.
  void validate() const;

  /// True when g*beta > -2 and g*beta*delta > -2, i.e. the Gaussian-limit
  /// integrals converge.
  bool gaussian_limit_converges() const noexcept;
};

struct BlochVector {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;

  double norm_squared() const noexcept { return l1 * l1 + l2 * l2 + l3 * l3; }
  /// Throws InvalidStateError if |l| > 1 (with 1e-12 slack) or non-finite.
  void validate() const;
};

/// 2x2 density matrix in the {|->, |+>} basis. rho21 = conj(rho12).
struct DensityMatrix2 {
  double rho11 = 0.5;
  double rho22 = 0.5;
  Complex rho12{0.0, 0.0};

  void validate() const;
};

/// rho = (1/2)[[1 - l3, l1 - i l2], [l1 + i l2, 1 + l3]].
DensityMatrix2 bloch_to_density(const BlochVector& b);
BlochVector density_to_bloch(const DensityMatrix2& r);

/// Density matrix of the pure state a|-> + b|+>; a and b are normalized first.
DensityMatrix2 pure_state(Complex a, Complex b);

/// tr rho^2 = (1 + |l|^2) / 2.
double purity(const BlochVector& b);

inline constexpr double kStateSlack = 1e-12;

}  // namespace spinbath
