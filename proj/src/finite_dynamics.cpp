#include "spinbath/finite_dynamics.hpp"

#include <cmath>

#include "spinbath/errors.hpp"
#include "spinbath/parallel.hpp"

namespace spinbath {

SectorSpectrum sector_spectrum(const ModelParams& p, int j, int m) {
  if (!p.is_finite()) throw UnsupportedError("sector spectrum needs a finite N");
  if (m < -j || m > j) throw InvalidArgumentError("|m| must not exceed j");
  const double n = *p.n_bath;
  const double slope = p.gamma / std::sqrt(n) + p.g * (1.0 - p.delta) / n;
  const double coupling = p.alpha * p.alpha / n;

  SectorSpectrum s;
  s.jpjm = static_cast<double>(j + m) * (j - m + 1);
  s.jmjp = static_cast<double>(j - m) * (j + m + 1);
  s.f1 = p.mu + slope * (m - 0.5);
  s.f2 = -p.mu - slope * (m + 0.5);
  s.m1 = s.f1 * s.f1 + coupling * s.jpjm;
  s.m2 = s.f2 * s.f2 + coupling * s.jmjp;
  s.omega = 2.0 * p.g * (p.delta - 1.0) * m / n;
  return s;
}

double sinc(double x) {
  if (std::abs(x) < 1e-6) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

FiniteEvolution::FiniteEvolution(const ModelParams& p) : FiniteEvolution(p, build_sector_table(p)) {}

FiniteEvolution::FiniteEvolution(const ModelParams& p, SectorTable table)
    : table_(std::move(table)) {
  p.validate();
  if (!p.is_finite() || table_.n != *p.n_bath) {
    throw InvalidArgumentError("sector table does not match the model's N");
  }
  const double n = table_.n;
  terms_.resize(table_.entries.size());
  parallel_for(terms_.size(), [&](std::size_t i) {
    const SectorEntry& e = table_.entries[i];
    Term& term = terms_[i];
    term.s = sector_spectrum(p, e.j, e.m);
    term.root_m1 = std::sqrt(term.s.m1);
    term.root_m2 = std::sqrt(term.s.m2);
    term.weight = table_.weight(i);
    term.flip_scale = p.alpha * p.alpha * term.s.jpjm / n;
    if (term.s.jpjm > 0.0) {
      // W(j, m-1) = W(j, m) exp(-2h), h = (g beta / 2N)(1 - delta)(2m - 1).
      const double two_h = p.g * p.beta / n * (1.0 - p.delta) * (2.0 * e.m - 1.0);
      if (std::abs(two_h) < 1.0) {
        const double em1 = std::expm1(-two_h);
        term.weight_diff = -term.weight * em1;
        term.weight_sum = term.weight * (2.0 + em1);
      } else {
        // Large shifts: both weights from the log kernel, no overflow in exp(-2h).
        const double lower = std::exp(e.log_w - two_h - table_.log_zn);
        term.weight_diff = term.weight - lower;
        term.weight_sum = term.weight + lower;
      }
    }
  });
}

double FiniteEvolution::lambda3(double l3_0, double t) const {
  std::vector<double> diff(terms_.size());
  std::vector<double> sum(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& term = terms_[i];
    if (term.flip_scale == 0.0) {
      diff[i] = sum[i] = 0.0;
      continue;
    }
    const double s = sinc(t * term.root_m1);
    const double flip = term.flip_scale * t * t * s * s;
    diff[i] = flip * term.weight_diff;
    sum[i] = flip * term.weight_sum;
  }
  return pairwise_sum(diff) + l3_0 * (1.0 - pairwise_sum(sum));
}

std::pair<double, double> FiniteEvolution::lambda12(double l1_0, double l2_0, double t) const {
  std::vector<double> re(terms_.size());
  std::vector<double> im(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& term = terms_[i];
    const double c1 = std::cos(t * term.root_m1);
    const double c2 = std::cos(t * term.root_m2);
    const double s1 = term.s.f1 * t * sinc(t * term.root_m1);
    const double s2 = term.s.f2 * t * sinc(t * term.root_m2);
    const double a = c1 * c2 + s1 * s2;
    const double b = s1 * c2 - c1 * s2;
    const double co = std::cos(term.s.omega * t);
    const double si = std::sin(term.s.omega * t);
    // W e^{i Omega t} (A + iB)
    re[i] = term.weight * (co * a - si * b);
    im[i] = term.weight * (si * a + co * b);
  }
  // lambda1 - i lambda2 = (l1_0 - i l2_0) * sum
  const Complex total(pairwise_sum(re), pairwise_sum(im));
  const Complex coherence = Complex(l1_0, -l2_0) * total;
  return {coherence.real(), -coherence.imag()};
}

BlochVector FiniteEvolution::bloch(const BlochVector& b0, double t) const {
  const auto [l1, l2] = lambda12(b0.l1, b0.l2, t);
  return BlochVector{l1, l2, lambda3(b0.l3, t)};
}

double lambda3_finite(const ModelParams& p, const SectorTable& table, double l3_0, double t) {
  return FiniteEvolution(p, table).lambda3(l3_0, t);
}

std::pair<double, double> lambda12_finite(const ModelParams& p, const SectorTable& table,
                                          double l1_0, double l2_0, double t) {
  return FiniteEvolution(p, table).lambda12(l1_0, l2_0, t);
}

Trajectory trajectory_finite(const ModelParams& p, const BlochVector& b0,
                             std::span<const double> times) {
  b0.validate();
  validate_times(times);
  const FiniteEvolution evolution(p);
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.bloch.resize(times.size());
  traj.purity.resize(times.size());
  parallel_for(times.size(), [&](std::size_t k) {
    traj.bloch[k] = evolution.bloch(b0, times[k]);
    traj.purity[k] = purity(traj.bloch[k]);
  });
  return traj;
}

}  // namespace spinbath
