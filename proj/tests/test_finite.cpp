#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "spinbath/errors.hpp"
#include "spinbath/finite_dynamics.hpp"

using namespace spinbath;

namespace {

ModelParams field_one(int n) {
  ModelParams p;
  p.mu = 1.0;
  p.g = 1.0;
  p.beta = 0.5;
  p.n_bath = n;
  return p;
}

ModelParams random_params(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  ModelParams p;
  p.mu = u(rng);
  p.gamma = u(rng);
  p.alpha = 0.5 + std::abs(u(rng));
  p.g = u(rng);
  p.delta = u(rng);
  p.beta = std::abs(u(rng));
  p.n_bath = n;
  return p;
}

}  // namespace

TEST_CASE("singlet sector spectrum") {
  std::mt19937_64 rng(11);
  const auto p = random_params(rng, 10);
  const auto s = sector_spectrum(p, 0, 0);
  CHECK(s.jpjm == 0.0);
  CHECK(s.jmjp == 0.0);
  CHECK(s.m1 == doctest::Approx(s.f1 * s.f1));
  CHECK(s.m2 == doctest::Approx(s.f2 * s.f2));
}

TEST_CASE("isotropic zero-field spectrum has f1 = 0") {
  ModelParams p;
  p.g = 1.3;
  p.delta = 1.0;
  p.n_bath = 12;
  for (int j = 0; j <= 6; ++j) {
    for (int m = -j; m <= j; ++m) CHECK(sector_spectrum(p, j, m).f1 == 0.0);
  }
}

TEST_CASE("ladder identities hold spectrally") {
  std::mt19937_64 rng(5);
  for (int draw = 0; draw < 5; ++draw) {
    const auto p = random_params(rng, 20);
    const auto a = sector_spectrum(p, 3, 1);
    const auto b = sector_spectrum(p, 3, 0);
    CHECK(a.f1 == doctest::Approx(-b.f2).epsilon(1e-14));
    CHECK(a.m1 == doctest::Approx(b.m2).epsilon(1e-14));
    for (int j = 1; j <= 10; ++j) {
      for (int m = -j + 1; m <= j; ++m) {
        const auto x = sector_spectrum(p, j, m);
        const auto y = sector_spectrum(p, j, m - 1);
        CHECK(std::abs(x.f1 + y.f2) <= 1e-14 * (1 + std::abs(x.f1)));
        CHECK(std::abs(x.m1 - y.m2) <= 1e-13 * (1 + x.m1));
      }
    }
  }
}

TEST_CASE("per-sector unitarity") {
  std::mt19937_64 rng(9);
  const auto p = random_params(rng, 16);
  const double a2 = p.alpha * p.alpha / 16.0;
  for (int j = 0; j <= 8; ++j) {
    for (int m = -j; m <= j; ++m) {
      const auto s = sector_spectrum(p, j, m);
      for (double t : {0.3, 2.0, 17.0}) {
        const double w = std::sqrt(s.m1);
        const double sn = t * sinc(w * t);  // sin(w t) / w
        const double c = std::cos(w * t);
        CHECK(std::abs(c * c + s.f1 * s.f1 * sn * sn + a2 * s.jpjm * sn * sn - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("guarded sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-8) == doctest::Approx(1.0));
  CHECK(sinc(1e-5) == doctest::Approx(std::sin(1e-5) / 1e-5).epsilon(1e-15));
  CHECK(sinc(2.0) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("t = 0 returns the initial vector") {
  const BlochVector b0{0.375, 0.375, 0.5};
  const std::vector<double> times{0.0};
  const auto traj = trajectory_finite(field_one(100), b0, times);
  REQUIRE(traj.size() == 1);
  CHECK(std::abs(traj.bloch[0].l1 - b0.l1) <= 1e-12);
  CHECK(std::abs(traj.bloch[0].l2 - b0.l2) <= 1e-12);
  CHECK(std::abs(traj.bloch[0].l3 - b0.l3) <= 1e-12);
  CHECK(traj.purity[0] == doctest::Approx(purity(b0)));
}

TEST_CASE("cold antiferromagnetic bath freezes the spin") {
  ModelParams p = field_one(40);
  p.beta = 1e6;
  const BlochVector b0{0.375, 0.375, 0.5};
  const FiniteEvolution ev(p);
  for (double t : {0.5, 3.0, 20.0}) {
    const auto b = ev.bloch(b0, t);
    CHECK(b.l3 == doctest::Approx(b0.l3).epsilon(1e-12));
    // Only the field precession survives in the j = 0 sector.
    CHECK(std::hypot(b.l1, b.l2) == doctest::Approx(std::hypot(b0.l1, b0.l2)).epsilon(1e-12));
  }
}

TEST_CASE("quarter-turn symmetry at delta = 1") {
  std::mt19937_64 rng(3);
  auto p = random_params(rng, 30);
  p.delta = 1.0;
  const FiniteEvolution ev(p);
  for (double t : {0.0, 0.7, 4.0, 12.0}) {
    const double l1 = 0.3, l2 = -0.45;
    const auto a = ev.lambda12(l1, l2, t);
    const auto b = ev.lambda12(l2, -l1, t);
    CHECK(std::abs(b.first - a.second) <= 1e-12);
    CHECK(std::abs(b.second + a.first) <= 1e-12);
  }
}

TEST_CASE("purity bounds and contractivity") {
  std::mt19937_64 rng(21);
  const BlochVector b0{0.375, 0.375, 0.5};
  for (int draw = 0; draw < 4; ++draw) {
    const auto p = random_params(rng, 24);
    std::vector<double> times;
    for (int k = 0; k <= 60; ++k) times.push_back(0.5 * k);
    const auto traj = trajectory_finite(p, b0, times);
    for (std::size_t i = 0; i < traj.size(); ++i) {
      CHECK(traj.purity[i] >= 0.5);
      CHECK(traj.purity[i] <= 1.0);
      CHECK(traj.bloch[i].norm_squared() <= b0.norm_squared() + 1e-9);
    }
  }
}

TEST_CASE("antiferromagnetic saturation with N") {
  std::vector<double> times;
  for (int k = 0; k <= 200; ++k) times.push_back(0.1 * k);
  const BlochVector b0{0.375, 0.375, 0.5};
  const auto t100 = trajectory_finite(field_one(100), b0, times);
  const auto t200 = trajectory_finite(field_one(200), b0, times);
  const auto t400 = trajectory_finite(field_one(400), b0, times);
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    d1 = std::max(d1, std::abs(t100.bloch[i].l3 - t200.bloch[i].l3));
    d2 = std::max(d2, std::abs(t200.bloch[i].l3 - t400.bloch[i].l3));
  }
  CHECK(d2 < d1);
}

TEST_CASE("bad inputs") {
  CHECK_THROWS_AS(sector_spectrum(field_one(10), 2, 3), InvalidArgumentError);
  ModelParams inf;
  CHECK_THROWS_AS(sector_spectrum(inf, 0, 0), UnsupportedError);
  const std::vector<double> unsorted{1.0, 0.5};
  CHECK_THROWS_AS(trajectory_finite(field_one(10), {0, 0, 0}, unsorted), InvalidArgumentError);
}
