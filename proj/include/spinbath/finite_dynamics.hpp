#pragma once

#include <span>
#include <utility>
#include <vector>

#include "spinbath/bath_spectrum.hpp"
#include "spinbath/io.hpp"
#include "spinbath/model.hpp"

namespace spinbath {

/// Eigenvalues of the diagonal operators F1, F2, M1, M2, J+J-, J-J+ and
/// Omega on the bath state |j, m>.
///
/// The pair {|-> (x) |j,m>, |+> (x) |j,m-1>} is an invariant 2x2 block of the
/// Hamiltonian; f1 is half its diagonal splitting and sqrt(m1) half its gap.
/// f2, m2 describe the block {|+> (x) |j,m>, |-> (x) |j,m+1>} the same way.
struct SectorSpectrum {
  double f1 = 0.0;
  double f2 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double jpjm = 0.0;   // (j + m)(j - m + 1)
  double jmjp = 0.0;   // (j - m)(j + m + 1)
  double omega = 0.0;  // 2 g (delta - 1) m / N
};

SectorSpectrum sector_spectrum(const ModelParams& p, int j, int m);

/// sin(x)/x, with a three-term series below |x| = 1e-6.
double sinc(double x);

/// Closed-form reduced dynamics for a finite bath. Construction caches the
/// per-sector spectra and weights; evaluation at any t is then a weighted
/// sum over sectors. Immutable after construction, safe to share.
class FiniteEvolution {
 public:
  FiniteEvolution(const ModelParams& p, SectorTable table);
  explicit FiniteEvolution(const ModelParams& p);

  double lambda3(double l3_0, double t) const;
  std::pair<double, double> lambda12(double l1_0, double l2_0, double t) const;
  BlochVector bloch(const BlochVector& b0, double t) const;

  const SectorTable& table() const noexcept { return table_; }

 private:
  struct Term {
    SectorSpectrum s;
    double root_m1 = 0.0;
    double root_m2 = 0.0;
    double weight = 0.0;        // W(j, m)
    double weight_diff = 0.0;   // W(j, m) - W(j, m-1)
    double weight_sum = 0.0;    // W(j, m) + W(j, m-1)
    double flip_scale = 0.0;    // alpha^2 jpjm / N
  };

  SectorTable table_;
  std::vector<Term> terms_;
};

/// lambda_3(t) evaluated over `table` (built from the same params).
double lambda3_finite(const ModelParams& p, const SectorTable& table, double l3_0, double t);

std::pair<double, double> lambda12_finite(const ModelParams& p, const SectorTable& table,
                                          double l1_0, double l2_0, double t);

/// Times must be sorted and non-negative. Parallel over time points.
Trajectory trajectory_finite(const ModelParams& p, const BlochVector& b0,
                             std::span<const double> times);

}  // namespace spinbath
