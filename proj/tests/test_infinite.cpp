#include <doctest.h>

#include <cmath>
#include <vector>

#include "spinbath/errors.hpp"
#include "spinbath/infinite_dynamics.hpp"
#include "spinbath/special_functions.hpp"

using namespace spinbath;

namespace {

const BlochVector kB0{0.375, 0.375, 0.5};

double sup_gap(const BlochVector& a, const BlochVector& b) {
  return std::max({std::abs(a.l1 - b.l1), std::abs(a.l2 - b.l2), std::abs(a.l3 - b.l3)});
}

}  // namespace

TEST_CASE("zbar values") {
  CHECK(zbar({0, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK(std::abs(zbar({0, 0, 2, 10}) - 0.204124) <= 1e-6);
  CHECK(zbar({0, 0, 2, 0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(zbar({0, 0, -2, 0}), DomainError);
  CHECK_THROWS_AS(zbar({0, 0, 1, -3}), DomainError);
}

TEST_CASE("GaussLimitParams from a model") {
  ModelParams m;
  m.mu = 1.0;
  m.alpha = 2.0;
  m.g = 3.0;
  m.beta = 0.5;
  m.delta = 4.0;
  const auto p = GaussLimitParams::from_model(m);
  CHECK(p.mu == 0.5);
  CHECK(p.gb == doctest::Approx(1.5));
  CHECK(p.gbd == doctest::Approx(6.0));
}

TEST_CASE("expectation normalization and moments") {
  const QuadratureSpec q;
  for (const GaussLimitParams& p : {GaussLimitParams{0, 0, 0, 0}, GaussLimitParams{0, 0, 2, 10},
                                    GaussLimitParams{0, 0, -1.5, 3}}) {
    CHECK(expectation([](double, double) { return 1.0; }, p, q) == doctest::Approx(1.0));
  }
  const GaussLimitParams flat{0, 0, 0, 0};
  CHECK(expectation([](double r2, double) { return r2; }, flat, q) == doctest::Approx(0.5));
  CHECK(expectation([](double, double m) { return m * m; }, flat, q) == doctest::Approx(0.25));
  CHECK(expectation([](double r2, double) { return r2 * r2; }, flat, q) == doctest::Approx(0.5));
}

TEST_CASE("response functions at t = 0") {
  const GaussLimitParams p{0.5, 0, 1, 0};
  const auto c = response_closed(0.0, p);
  CHECK(c.eta == 0.0);
  CHECK(c.zeta == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.xi == 0.0);
  const auto q = response_quadrature(0.0, {0.5, 2, 1, 3});
  CHECK(q.eta == doctest::Approx(0.0));
  CHECK(q.zeta == doctest::Approx(1.0));
}

TEST_CASE("xi vanishes at zero field") {
  for (double t : {0.5, 3.0, 11.0}) CHECK(xi_closed(t, {0, 0, 1, 0}) == 0.0);
}

TEST_CASE("closed forms match quadrature") {
  double worst = 0.0;
  for (double mu : {0.1, 0.5, 2.0}) {
    for (double gb : {0.0, 1.0, 2.0}) {
      for (double t = 0.0; t <= 20.0; t += 2.5) {
        const GaussLimitParams p{mu, 0, gb, 0};
        const auto c = response_closed(t, p);
        const auto q = response_quadrature(t, p);
        worst = std::max({worst, std::abs(c.eta - q.eta), std::abs(c.zeta - q.zeta),
                          std::abs(c.xi - q.xi)});
      }
    }
  }
  CHECK(worst <= 1e-8);
  const GaussLimitParams warm_field{0.4, 0, 5, 2.5};
  for (double t = 0.0; t <= 20.0; t += 1.0) {
    CHECK(std::abs(eta_closed(t, warm_field) - eta_quadrature(t, warm_field)) <= 1e-8);
  }
}

TEST_CASE("anisotropy drops out at gamma = 0") {
  for (double t : {0.7, 4.0, 15.0}) {
    const double a = eta_quadrature(t, {0.3, 0, 1, 0});
    for (double gbd : {-1.0, 2.0, 10.0}) {
      CHECK(std::abs(eta_quadrature(t, {0.3, 0, 1, gbd}) - a) <= 1e-10);
    }
  }
}

TEST_CASE("closed-form routing errors") {
  CHECK_THROWS_AS(eta_closed(1.0, {0, 0, 1, 0}), DomainError);
  CHECK_THROWS_AS(eta_closed(1.0, {0.5, 1, 1, 0}), InvalidArgumentError);
  CHECK_NOTHROW(zeta_closed(1.0, {0, 0, 1, 0}));
}

TEST_CASE("eta reaches its plateau by t = 50") {
  // Literal requirement: |eta(50) - (1 - eta_inf)| <= 1e-6.
  const GaussLimitParams p{0.4, 0, 5, 0};
  CHECK(std::abs(eta_closed(50.0, p) - (1.0 - eta_asymptote(p))) <= 1e-6);
}

TEST_CASE("bloch_infinite basics") {
  const auto b = bloch_infinite(0.0, {0.5, 0, 1, 0}, kB0);
  CHECK(sup_gap(b, kB0) <= 1e-14);
  // Zero field: coherences halve, population difference vanishes.
  const auto late = bloch_infinite(400.0, {0, 0, 2, 0}, kB0);
  CHECK(std::abs(late.l1 - kB0.l1 / 2) <= 1e-4);
  CHECK(std::abs(late.l2 - kB0.l2 / 2) <= 1e-4);
  CHECK(std::abs(late.l3) <= 1e-4);
}

TEST_CASE("eta stays in [0, 2] and the vector contracts") {
  for (const GaussLimitParams& p : {GaussLimitParams{0.5, 0, 2, 0}, GaussLimitParams{0.1, 2, 1, 5},
                                    GaussLimitParams{1.0, 1, 0.5, 0.5}}) {
    for (double t = 0.0; t <= 15.0; t += 0.75) {
      const auto r = response_quadrature(t, p);
      CHECK(r.eta >= -1e-12);
      CHECK(r.eta <= 2.0 + 1e-12);
      CHECK(bloch_from_response(kB0, r).norm_squared() <= kB0.norm_squared() + 1e-9);
    }
  }
}

TEST_CASE("eta asymptote values") {
  CHECK(eta_asymptote({0, 0, 1, 0}) == 0.0);
  const double e1 = 0.21938393439552029;
  CHECK(std::abs(eta_asymptote({1.0 / std::sqrt(2.0), 0, 0, 0}) - std::exp(1.0) * e1) <= 1e-10);
  const double x = 1e4;
  const double series = 1.0 - 1.0 / x + 2.0 / (x * x);
  CHECK(std::abs(eta_asymptote({std::sqrt(x / 2), 0, 0, 0}) - series) <= 1e-6);
}

TEST_CASE("eta asymptote with gamma") {
  const QuadratureSpec q;
  for (const GaussLimitParams& p : {GaussLimitParams{0.5, 0, 2, 0}, GaussLimitParams{1.3, 0, 0, 4}}) {
    CHECK(std::abs(eta_asymptote_gamma(p, q) - (1.0 - eta_asymptote(p))) <= 1e-10);
  }
  const GaussLimitParams longitudinal{0.0, 2.0, 1.5, 1.5};
  CHECK(std::abs(eta_asymptote_gamma(longitudinal, q) - eta_quadrature(60.0, longitudinal, q)) <= 1e-3);
  // Removable point at m = -mu / gamma.
  CHECK(std::isfinite(eta_asymptote_gamma({0.3, 2.0, 1.5, 1.5}, q)));
}

TEST_CASE("asymptotic Bloch vector limits") {
  const auto zero_field = asymptotic_bloch({0, 0, 1, 0}, kB0);
  CHECK(zero_field.l1 == doctest::Approx(kB0.l1 / 2));
  CHECK(zero_field.l2 == doctest::Approx(kB0.l2 / 2));
  CHECK(zero_field.l3 == 0.0);
  const auto strong = asymptotic_bloch({1e3, 0, 1, 0}, kB0);
  CHECK(std::abs(strong.l1) <= 1e-6);
  CHECK(std::abs(strong.l3 - kB0.l3) <= 1e-6);
}

TEST_CASE("short-time law structure") {
  const GaussLimitParams p{0.5, 0, 1, 0};
  CHECK(sup_gap(short_time(0.0, p, kB0), kB0) == 0.0);
  const double t = 0.3;
  const auto s = short_time(t, p, kB0);
  const double k3 = std::log(s.l3 / kB0.l3);
  const double k1 = std::log(std::hypot(s.l1, s.l2) / std::hypot(kB0.l1, kB0.l2));
  CHECK(k3 / k1 == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("colder baths decay slower at short times") {
  const double t = 0.1;
  double prev_law = 0.0, prev_exact = 0.0;
  for (double gb : {0.0, 1.0, 5.0, 20.0}) {
    const GaussLimitParams p{0.5, 0, gb, 0};
    const double law = short_time(t, p, kB0).l3;
    const double exact = bloch_infinite(t, p, kB0).l3;
    CHECK(law > prev_law);
    CHECK(exact > prev_exact);
    prev_law = law;
    prev_exact = exact;
  }
}

TEST_CASE("decoherence time") {
  CHECK(decoherence_time({0, 0, 0, 0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(decoherence_time({0, 0, 2, 0}) == doctest::Approx(2.0));
  CHECK(decoherence_time({0, 1e-300, 3, 0}) == doctest::Approx(std::sqrt(5.0)));
  CHECK(decoherence_time({0, 1, 0, 0}) == doctest::Approx(std::sqrt(4.0 / 4.0)));
}

TEST_CASE("Ising coherence") {
  CHECK(ising_coherence(0.0, {0, 1, 0, 2}) == 1.0);
  CHECK(ising_coherence(2.0, {0, 1, 0, 2}) == doctest::Approx(std::exp(-1.0)));
  CHECK(ising_coherence(1.0, {0, 1, 0, 10}) > ising_coherence(1.0, {0, 1, 0, 5}));
}

TEST_CASE("trajectory_infinite converts physical time") {
  ModelParams m;
  m.mu = 1.0;
  m.alpha = 2.0;
  m.g = 1.0;
  m.beta = 1.0;
  const std::vector<double> times{0.0, 0.5, 1.5};
  const auto traj = trajectory_infinite(m, kB0, times, {}, true);
  REQUIRE(traj.eta.size() == 3);
  const auto p = GaussLimitParams::from_model(m);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(sup_gap(traj.bloch[i], bloch_infinite(2.0 * times[i], p, kB0)) <= 1e-14);
    CHECK(traj.eta[i] == doctest::Approx(eta_closed(2.0 * times[i], p)));
  }
  m.g = -5.0;
  CHECK_THROWS_AS(trajectory_infinite(m, kB0, times), DomainError);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  q.hermite_order = 4;
  CHECK_THROWS(q.validate());
  q = {};
  q.abs_tol = 1e-15;
  CHECK_THROWS(q.validate());
}
