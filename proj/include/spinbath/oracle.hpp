#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinbath/infinite_dynamics.hpp"
#include "spinbath/io.hpp"
#include "spinbath/model.hpp"

namespace spinbath {

/// Hamiltonian restricted to one copy of the spin-j bath sector, in the basis
/// |s> (x) |j, m> with s in {-, +} (outer index) and m descending.
struct SectorMatrix {
  int j = 0;
  int dim = 0;  // 2(2j + 1)
  Eigen::MatrixXd h;

  /// Row/column of |s> (x) |j, m>; s = 0 for |->, 1 for |+>.
  int index(int s, int m) const { return s * (2 * j + 1) + (j - m); }
};

/// 2 mu S_z + (2 gamma / sqrt N) S_z J_z + (alpha / sqrt N)(S+ J- + S- J+)
/// + (g/N)[J^2 + (delta - 1) J_z^2], assembled from the ladder matrix
/// elements. Needs a finite N and 0 <= j <= N/2.
SectorMatrix build_sector_matrix(const ModelParams& p, int j);

/// Reduced dynamics from a full eigendecomposition of every sector matrix.
/// Shares nothing with the closed-form evaluator except the thermal weights.
class DenseEvolution {
 public:
  /// N <= 2000.
  DenseEvolution(const ModelParams& p, const BlochVector& b0);

  /// Reduced density matrix at time t (inverse units of the parameters).
  DensityMatrix2 density(double t) const;
  BlochVector bloch(double t) const { return density_to_bloch(density(t)); }

 private:
  struct Sector {
    Eigen::VectorXd energies;
    // R o (V_s^T V_s') for (s, s') = (-,-), (+,+), (-,+), with R = V^T rho0 V.
    Eigen::MatrixXcd minus_minus;
    Eigen::MatrixXcd plus_plus;
    Eigen::MatrixXcd minus_plus;
  };
  std::vector<Sector> sectors_;
};

Trajectory evolve_dense(const ModelParams& p, const BlochVector& b0,
                        std::span<const double> times);

struct McSpec {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 20240601;
  int batch = 1 << 16;  // samples per independent substream

  /// samples >= 1e4, batch >= 1.
  void validate() const;
};

struct McResult {
  double mean = 0.0;
  double stderr_mean = 0.0;
  double weight_mean = 0.0;    // estimates zbar
  double weight_stderr = 0.0;
  double effective_samples = 0.0;
  std::string warning;         // set when effective_samples < 100
};

/// Self-normalized Monte-Carlo estimate of the thermal average of f (same
/// convention as expectation(): the Boltzmann factor belongs to the measure).
/// Samples m, Re z, Im z ~ Normal(0, 1/4) and weights by
/// exp(-gb |z|^2 - gbd m^2). Reproducible for a fixed seed and batch size,
/// whatever the thread count.
McResult mc_expectation(const LimitIntegrand& f, const GaussLimitParams& p, const McSpec& spec);

struct McResponse {
  ResponseFunctions mean;
  ResponseFunctions stderr_mean;
};

/// eta, zeta and xi at time t (units of 1/alpha) from one sample set.
McResponse mc_response(double t, const GaussLimitParams& p, const McSpec& spec);

/// Infinite-N trajectory with every point estimated by Monte-Carlo; times in
/// physical units as for trajectory_infinite.
Trajectory mc_trajectory(const ModelParams& p, const BlochVector& b0,
                         std::span<const double> times, const McSpec& spec,
                         bool emit_eta = false);

}  // namespace spinbath
