#include "spinbath/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "spinbath/bath_spectrum.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/finite_dynamics.hpp"
#include "spinbath/parallel.hpp"

namespace spinbath {

namespace {

constexpr int kDenseMaxN = 2000;

double ladder(int j, int m, int step) {
  // <j, m + step| J_{+/-} |j, m> for step = +1 / -1
  return std::sqrt(j * (j + 1.0) - m * static_cast<double>(m + step));
}

}  // namespace

SectorMatrix build_sector_matrix(const ModelParams& p, int j) {
  p.validate();
  if (!p.is_finite()) throw UnsupportedError("sector matrices need a finite N");
  const int n = *p.n_bath;
  if (j < 0 || j > n / 2) throw InvalidArgumentError("j out of range");
  const double root_n = std::sqrt(static_cast<double>(n));

  SectorMatrix sm;
  sm.j = j;
  sm.dim = 2 * (2 * j + 1);
  sm.h = Eigen::MatrixXd::Zero(sm.dim, sm.dim);
  for (int s = 0; s < 2; ++s) {
    const double sz = s == 0 ? -0.5 : 0.5;
    for (int m = -j; m <= j; ++m) {
      const int i = sm.index(s, m);
      sm.h(i, i) = 2.0 * p.mu * sz + 2.0 * p.gamma / root_n * sz * m +
                   p.g / n * (j * (j + 1.0) + (p.delta - 1.0) * m * static_cast<double>(m));
    }
  }
  // S+ J-: |-, m> -> |+, m - 1>; S- J+ is its transpose.
  for (int m = -j + 1; m <= j; ++m) {
    const double v = p.alpha / root_n * ladder(j, m, -1);
    const int from = sm.index(0, m);
    const int to = sm.index(1, m - 1);
    sm.h(to, from) = v;
    sm.h(from, to) = v;
  }
  return sm;
}

DenseEvolution::DenseEvolution(const ModelParams& p, const BlochVector& b0) {
  p.validate();
  b0.validate();
  if (!p.is_finite()) throw UnsupportedError("dense evolution needs a finite N");
  if (*p.n_bath > kDenseMaxN) {
    throw UnsupportedError("dense evolution is limited to N <= " + std::to_string(kDenseMaxN));
  }
  const SectorTable table = build_sector_table(p);
  const DensityMatrix2 rho0 = bloch_to_density(b0);
  const int half = table.n / 2;

  // Thermal weight of one copy of |j, m>, times nu(N, j).
  std::vector<std::vector<double>> weights(half + 1);
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const SectorEntry& e = table.entries[i];
    auto& w = weights[e.j];
    if (w.empty()) w.assign(2 * e.j + 1, 0.0);
    w[e.j - e.m] = table.weight(i);
  }

  sectors_.resize(half + 1);
  parallel_for(sectors_.size(), [&](std::size_t idx) {
    const int j = static_cast<int>(idx);
    const SectorMatrix sm = build_sector_matrix(p, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sm.h);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::Tolerance, "sector eigensolver failed for j = " + std::to_string(j));
    }
    const Eigen::MatrixXd& v = solver.eigenvectors();
    const int block = 2 * j + 1;

    // rho0 (x) diag(w) in the product basis.
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sm.dim, sm.dim);
    for (int k = 0; k < block; ++k) {
      const double w = weights[j][k];
      rho(k, k) = rho0.rho11 * w;
      rho(block + k, block + k) = rho0.rho22 * w;
      rho(k, block + k) = rho0.rho12 * w;
      rho(block + k, k) = std::conj(rho0.rho12) * w;
    }
    const Eigen::MatrixXcd r = v.transpose().cast<Complex>() * rho * v.cast<Complex>();
    const Eigen::MatrixXd vm = v.topRows(block);
    const Eigen::MatrixXd vp = v.bottomRows(block);

    Sector& sector = sectors_[idx];
    sector.energies = solver.eigenvalues();
    sector.minus_minus = r.cwiseProduct((vm.transpose() * vm).cast<Complex>());
    sector.plus_plus = r.cwiseProduct((vp.transpose() * vp).cast<Complex>());
    sector.minus_plus = r.cwiseProduct((vm.transpose() * vp).cast<Complex>());
  });
}

DensityMatrix2 DenseEvolution::density(double t) const {
  // rho_{ss'}(t) = sum_{kl} RG^{ss'}_{kl} e^{-i d_k t} e^{+i d_l t}
  Complex mm = 0.0;
  Complex pp = 0.0;
  Complex mp = 0.0;
  for (const Sector& s : sectors_) {
    const Eigen::Index d = s.energies.size();
    Eigen::VectorXcd e(d);
    for (Eigen::Index k = 0; k < d; ++k) e(k) = std::polar(1.0, -s.energies(k) * t);
    // Eigen dot() conjugates its left operand: ec.dot(x) = e^T x.
    const Eigen::VectorXcd ec = e.conjugate();
    mm += ec.dot(s.minus_minus * ec);
    pp += ec.dot(s.plus_plus * ec);
    mp += ec.dot(s.minus_plus * ec);
  }
  DensityMatrix2 out;
  out.rho11 = mm.real();
  out.rho22 = pp.real();
  out.rho12 = mp;
  return out;
}

Trajectory evolve_dense(const ModelParams& p, const BlochVector& b0,
                        std::span<const double> times) {
  validate_times(times);
  const DenseEvolution evolution(p, b0);
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.bloch.resize(times.size());
  traj.purity.resize(times.size());
  parallel_for(times.size(), [&](std::size_t k) {
    traj.bloch[k] = evolution.bloch(times[k]);
    traj.purity[k] = purity(traj.bloch[k]);
  });
  return traj;
}

void McSpec::validate() const {
  if (samples < 10'000) throw InvalidArgumentError("Monte-Carlo needs at least 1e4 samples");
  if (batch < 1) throw InvalidArgumentError("Monte-Carlo batch size must be >= 1");
}

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Splitmix64 stream keyed by (seed, batch): the i-th draw depends only on
// those and i.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t batch)
      : state_(mix64(seed) ^ mix64(batch * kGolden + 0x632be59bd9b4e019ULL)) {}

  // Uniform on (0, 1].
  double uniform() {
    state_ += kGolden;
    return static_cast<double>((mix64(state_) >> 11) + 1) * 0x1.0p-53;
  }

  // Two independent standard normals (Box-Muller).
  std::pair<double, double> normals() {
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  std::uint64_t state_;
};

template <std::size_t K>
struct BatchSums {
  long double sw = 0.0L;
  long double sw2 = 0.0L;
  std::array<long double, K> swf{};
  std::array<long double, K> sw2f{};
  std::array<long double, K> sw2f2{};
};

template <std::size_t K, typename F>
std::array<McResult, K> mc_run(const F& f, const GaussLimitParams& p, const McSpec& spec) {
  p.validate();
  spec.validate();
  const std::int64_t batches = (spec.samples + spec.batch - 1) / spec.batch;
  std::vector<BatchSums<K>> sums(static_cast<std::size_t>(batches));
  parallel_for(sums.size(), [&](std::size_t b) {
    Stream rng(spec.seed, b);
    const std::int64_t begin = static_cast<std::int64_t>(b) * spec.batch;
    const std::int64_t end = std::min(spec.samples, begin + spec.batch);
    BatchSums<K>& acc = sums[b];
    for (std::int64_t i = begin; i < end; ++i) {
      const auto [n1, n2] = rng.normals();
      const auto [n3, n4] = rng.normals();
      (void)n4;
      const double m = 0.5 * n1;
      const double r2 = 0.25 * (n2 * n2 + n3 * n3);
      const double w = std::exp(-p.gb * r2 - p.gbd * m * m);
      const std::array<double, K> v = f(r2, m);
      acc.sw += w;
      acc.sw2 += static_cast<long double>(w) * w;
      for (std::size_t c = 0; c < K; ++c) {
        acc.swf[c] += static_cast<long double>(w) * v[c];
        acc.sw2f[c] += static_cast<long double>(w) * w * v[c];
        acc.sw2f2[c] += static_cast<long double>(w) * w * v[c] * v[c];
      }
    }
  });

  BatchSums<K> total;
  for (const BatchSums<K>& s : sums) {
    total.sw += s.sw;
    total.sw2 += s.sw2;
    for (std::size_t c = 0; c < K; ++c) {
      total.swf[c] += s.swf[c];
      total.sw2f[c] += s.sw2f[c];
      total.sw2f2[c] += s.sw2f2[c];
    }
  }
  const long double n = static_cast<long double>(spec.samples);
  const long double wmean = total.sw / n;
  const long double wvar = std::max(0.0L, total.sw2 / n - wmean * wmean);
  const double ess = static_cast<double>(total.sw * total.sw / total.sw2);

  std::array<McResult, K> out;
  for (std::size_t c = 0; c < K; ++c) {
    const long double mean = total.swf[c] / total.sw;
    // sum w^2 (f - mean)^2 / (sum w)^2
    const long double num = total.sw2f2[c] - 2.0L * mean * total.sw2f[c] + mean * mean * total.sw2;
    McResult& r = out[c];
    r.mean = static_cast<double>(mean);
    r.stderr_mean = static_cast<double>(std::sqrt(std::max(0.0L, num)) / total.sw);
    r.weight_mean = static_cast<double>(wmean);
    r.weight_stderr = static_cast<double>(std::sqrt(wvar / n));
    r.effective_samples = ess;
    if (ess < 100.0) {
      r.warning = "effective sample size " + std::to_string(ess) + " < 100; weights degenerate";
    }
  }
  return out;
}

}  // namespace

McResult mc_expectation(const LimitIntegrand& f, const GaussLimitParams& p, const McSpec& spec) {
  return mc_run<1>([&f](double r2, double m) { return std::array<double, 1>{f(r2, m)}; }, p,
                   spec)[0];
}

McResponse mc_response(double t, const GaussLimitParams& p, const McSpec& spec) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgumentError("t must be finite and >= 0");
  const auto integrand = [t, &p](double r2, double m) {
    const double mu = p.mu + p.gamma * m;
    const double x = mu * mu + r2;
    const double s = std::sin(t * std::sqrt(x));
    const double root = std::sqrt(x);
    return std::array<double, 3>{
        x > 0.0 ? 2.0 * r2 * s * s / x : 0.0,
        std::cos(2.0 * t * root),
        x > 0.0 ? mu * std::sin(2.0 * t * root) / root : 2.0 * t * mu,
    };
  };
  const auto r = mc_run<3>(integrand, p, spec);
  McResponse out;
  out.mean = ResponseFunctions{r[0].mean, r[1].mean, r[2].mean};
  out.stderr_mean = ResponseFunctions{r[0].stderr_mean, r[1].stderr_mean, r[2].stderr_mean};
  return out;
}

Trajectory mc_trajectory(const ModelParams& p, const BlochVector& b0,
                         std::span<const double> times, const McSpec& spec, bool emit_eta) {
  const GaussLimitParams gp = GaussLimitParams::from_model(p);
  b0.validate();
  validate_times(times);
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.bloch.resize(times.size());
  traj.purity.resize(times.size());
  if (emit_eta) traj.eta.resize(times.size());
  // Each point is already parallel over batches.
  for (std::size_t k = 0; k < times.size(); ++k) {
    const ResponseFunctions r = mc_response(times[k] * p.alpha, gp, spec).mean;
    traj.bloch[k] = bloch_from_response(b0, r);
    traj.purity[k] = purity(traj.bloch[k]);
    if (emit_eta) traj.eta[k] = r.eta;
  }
  return traj;
}

}  // namespace spinbath
