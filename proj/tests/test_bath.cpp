#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "spinbath/bath_spectrum.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/infinite_dynamics.hpp"

using namespace spinbath;

namespace {

ModelParams finite(int n, double g, double delta, double beta) {
  ModelParams p;
  p.g = g;
  p.delta = delta;
  p.beta = beta;
  p.n_bath = n;
  return p;
}

}  // namespace

TEST_CASE("log_degeneracy small cases") {
  CHECK(log_degeneracy(4, 1) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(log_degeneracy(4, 2) == doctest::Approx(0.0));
  CHECK(log_degeneracy(4, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(log_degeneracy(2, 0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(log_degeneracy(4, 3), InvalidArgumentError);
  CHECK_THROWS_AS(log_degeneracy(4, -1), InvalidArgumentError);
}

TEST_CASE("degeneracy sum rule") {
  for (int n : {2, 4, 10, 50, 200}) {
    CAPTURE(n);
    const double expected = n * std::log(2.0);
    CHECK(std::abs(log_degeneracy_sum(n) - expected) <= 1e-12 * expected);
  }
}

TEST_CASE("log_sum_exp is overflow free") {
  const std::vector<double> xs{1000.0, 1000.0};
  CHECK(log_sum_exp(xs) == doctest::Approx(1000.0 + std::log(2.0)));
  const std::vector<double> small{-1000.0, -1001.0};
  CHECK(std::isfinite(log_sum_exp(small)));
}

TEST_CASE("sector table shape and ordering") {
  const auto t = build_sector_table(finite(10, 1.0, 0.5, 0.3));
  CHECK(t.entries.size() == 36u);
  CHECK(t.entries.front().j == 5);
  CHECK(t.entries.front().m == -5);
  for (std::size_t i = 1; i < t.entries.size(); ++i) {
    const auto& a = t.entries[i - 1];
    const auto& b = t.entries[i];
    CHECK((a.j > b.j || (a.j == b.j && a.m < b.m)));
  }
  const auto& e = t.entries.front();
  CHECK(e.e_bath == doctest::Approx((1.0 / 10) * (5 * 6 + (0.5 - 1.0) * 25)));
}

TEST_CASE("infinite temperature partition") {
  const auto t = build_sector_table(finite(4, 1.0, 0.3, 0.0));
  CHECK(t.log_zn == doctest::Approx(4 * std::log(2.0)).epsilon(1e-14));
  CHECK(std::exp(t.log_zn) == doctest::Approx(16.0));
}

TEST_CASE("Table-I partition values") {
  const double expect[] = {0.203026, 0.203997, 0.204111, 0.204122};
  const int sizes[] = {10, 100, 1000, 5000};
  double prev = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double z = std::exp(build_sector_table(finite(sizes[k], 2, 5, 1)).log_scaled_partition());
    CAPTURE(sizes[k]);
    CHECK(std::abs(z - expect[k]) <= 1e-6);
    CHECK(z > prev);
    prev = z;
  }
  const double zb = zbar(GaussLimitParams{0, 0, 2, 10});
  CHECK(prev < zb);
  CHECK(std::abs(zb - 0.204124) <= 1e-6);
}

TEST_CASE("isotropic collapse of the partition function") {
  for (int n : {4, 20, 100}) {
    for (double gb : {-1.0, 0.5, 3.0}) {
      const auto t = build_sector_table(finite(n, gb, 1.0, 1.0));
      CAPTURE(n);
      CAPTURE(gb);
      CHECK(std::abs(t.log_zn - isotropic_log_partition(n, gb)) <= 1e-12 * std::max(1.0, std::abs(t.log_zn)));
    }
  }
}

TEST_CASE("tracial moments") {
  for (int n : {4, 100}) {
    CHECK(std::abs(tracial_moment_jz2(n) - 0.25) <= 1e-12);
    CHECK(std::abs(tracial_moment_jpm(n) - 0.5) <= 1e-12);
  }
  // Gamma(n + 1/2) / (2^n sqrt pi) at n = 1.
  CHECK(std::tgamma(1.5) / (2 * std::sqrt(M_PI)) == doctest::Approx(0.25));
}

TEST_CASE("odd and infinite N are rejected") {
  CHECK_THROWS_AS(build_sector_table(finite(5, 1, 1, 1)), UnsupportedError);
  ModelParams p;
  CHECK_THROWS_AS(build_sector_table(p), UnsupportedError);
}

TEST_CASE("sector CSV dump") {
  const auto path = std::filesystem::temp_directory_path() / "spinbath_sector_test.csv";
  write_sector_csv(build_sector_table(finite(4, 1, 0, 1)), path.string());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "j,m,log_nu,e_bath");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 9);
  std::filesystem::remove(path);
}
