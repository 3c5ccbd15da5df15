#include <doctest.h>

#include <cmath>
#include <numeric>

#include "spinbath/errors.hpp"
#include "spinbath/quadrature.hpp"

using namespace spinbath;

TEST_CASE("Gauss-Hermite normalization and moments") {
  for (int n : {8, 64, 256}) {
    const auto& r = gauss_hermite(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    double w = 0, x2 = 0, x4 = 0;
    for (int i = 0; i < n; ++i) {
      w += r.weights[i];
      x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
      x4 += r.weights[i] * std::pow(r.nodes[i], 4);
    }
    CHECK(w == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(x2 == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-13));
    CHECK(x4 == doctest::Approx(3 * std::sqrt(M_PI) / 4).epsilon(1e-13));
    // Symmetric rule.
    CHECK(r.nodes.front() == doctest::Approx(-r.nodes.back()));
  }
}

TEST_CASE("Gauss-Laguerre moments") {
  for (int n : {8, 64, 512}) {
    const auto& r = gauss_laguerre(n);
    for (int k = 0; k <= 5; ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      CHECK(s == doctest::Approx(std::tgamma(k + 1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials") {
  const auto& r = gauss_legendre(32);
  double s = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 10);
  CHECK(s == doctest::Approx(2.0 / 11).epsilon(1e-14));
}

TEST_CASE("rule cache returns stable references") {
  const auto* a = &gauss_hermite(40);
  const auto* b = &gauss_hermite(40);
  CHECK(a == b);
}

TEST_CASE("adaptive Gauss-Kronrod") {
  const double v = integrate_adaptive_real([](double x) { return std::exp(x); }, 0, 1, 1e-15, 1e-15);
  CHECK(v == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-15));
  const double peaked = integrate_adaptive_real(
      [](double x) { return 1.0 / (1e-4 + x * x); }, -1, 1, 1e-12, 1e-13);
  CHECK(peaked == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-12));
  CHECK_THROWS_AS(integrate_adaptive_real([](double x) { return 1.0 / std::sqrt(std::abs(x)); },
                                          -1, 1, 1e-15, 1e-15, 10),
                  ToleranceError);
  CHECK_THROWS_AS(integrate_adaptive_real([](double x) { return 1.0 / std::sqrt(x); }, 0, 1, 1e-15,
                                          1e-15, 10),
                  ToleranceError);
}
