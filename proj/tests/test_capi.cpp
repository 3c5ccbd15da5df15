#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "spinbath/spinbath.h"

namespace {

sb_params table1(int n) {
  sb_params p;
  sb_params_default(&p);
  p.g = 2.0;
  p.delta = 5.0;
  p.beta = 1.0;
  p.n_bath = n;
  return p;
}

}  // namespace

TEST_CASE("defaults") {
  sb_params p;
  sb_params_default(&p);
  CHECK(p.alpha == 1.0);
  CHECK(p.n_bath == 0);
  sb_quad_spec q;
  sb_quad_spec_default(&q);
  CHECK(q.hermite_order == 64);
  CHECK(q.max_refine == 512);
  sb_mc_spec m;
  sb_mc_spec_default(&m);
  CHECK(m.samples == 1000000);
  CHECK(std::string(sb_version()).size() > 0);
}

TEST_CASE("validation maps to status codes") {
  sb_params p = table1(7);
  CHECK(sb_params_validate(&p) == SB_ERR_UNSUPPORTED);
  CHECK(std::string(sb_last_error()).find("even") != std::string::npos);
  p = table1(0);
  p.g = -3.0;
  CHECK(sb_params_validate(&p) == SB_ERR_DOMAIN);
  p.g = 2.0;
  p.alpha = -1.0;
  CHECK(sb_params_validate(&p) == SB_ERR_INVALID_ARGUMENT);
  CHECK(sb_params_validate(nullptr) == SB_ERR_INVALID_ARGUMENT);
  p.alpha = 1.0;
  CHECK(sb_params_validate(&p) == SB_OK);
  CHECK(std::string(sb_last_error()).empty());
}

TEST_CASE("partition function through the C API") {
  sb_params p = table1(10);
  sb_model* m = nullptr;
  REQUIRE(sb_model_create(&p, &m) == SB_OK);
  double z = 0;
  CHECK(sb_model_scaled_partition(m, &z) == SB_OK);
  CHECK(std::abs(z - 0.203026) <= 1e-6);
  sb_model_destroy(m);

  p.n_bath = 0;
  REQUIRE(sb_model_create(&p, &m) == SB_OK);
  CHECK(sb_model_scaled_partition(m, &z) == SB_ERR_UNSUPPORTED);
  CHECK(sb_model_zbar(m, &z) == SB_OK);
  CHECK(std::abs(z - 0.204124) <= 1e-6);
  double tau = 0;
  CHECK(sb_model_decoherence_time(m, &tau) == SB_OK);
  CHECK(tau == doctest::Approx(2.0));
  sb_model_destroy(m);
}

TEST_CASE("finite and dense trajectories agree through the C API") {
  sb_params p;
  sb_params_default(&p);
  p.mu = 1.0;
  p.g = 1.0;
  p.beta = 0.5;
  p.n_bath = 20;
  sb_model* m = nullptr;
  REQUIRE(sb_model_create(&p, &m) == SB_OK);
  const sb_bloch b0{0.375, 0.375, 0.5};
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.5 * k);
  sb_trajectory* a = nullptr;
  sb_trajectory* d = nullptr;
  REQUIRE(sb_model_run_finite(m, &b0, times.data(), times.size(), &a) == SB_OK);
  REQUIRE(sb_model_run_dense(m, &b0, times.data(), times.size(), &d) == SB_OK);
  REQUIRE(sb_trajectory_size(a) == times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    sb_bloch x, y;
    double t = -1, pur = 0;
    REQUIRE(sb_trajectory_point(a, i, &t, &x, &pur) == SB_OK);
    REQUIRE(sb_trajectory_point(d, i, nullptr, &y, nullptr) == SB_OK);
    CHECK(t == times[i]);
    CHECK(std::abs(x.l1 - y.l1) <= 1e-9);
    CHECK(std::abs(x.l3 - y.l3) <= 1e-9);
  }
  CHECK(sb_trajectory_point(a, times.size(), nullptr, nullptr, nullptr) ==
        SB_ERR_INVALID_ARGUMENT);
  CHECK(sb_trajectory_has_eta(a) == 0);
  double eta = 0;
  CHECK(sb_trajectory_eta(a, 0, &eta) == SB_ERR_INVALID_STATE);
  sb_trajectory_destroy(a);
  sb_trajectory_destroy(d);
  sb_model_destroy(m);
}

TEST_CASE("infinite trajectory with eta and CSV output") {
  sb_params p;
  sb_params_default(&p);
  p.mu = 0.5;
  p.g = 2.0;
  p.beta = 1.0;
  sb_model* m = nullptr;
  REQUIRE(sb_model_create(&p, &m) == SB_OK);
  const sb_bloch b0{0.375, 0.375, 0.5};
  const double times[] = {0.0, 1.0, 2.0};
  sb_trajectory* tr = nullptr;
  REQUIRE(sb_model_run_infinite(m, &b0, times, 3, nullptr, 1, &tr) == SB_OK);
  CHECK(sb_trajectory_has_eta(tr) == 1);
  double eta = -1;
  CHECK(sb_trajectory_eta(tr, 0, &eta) == SB_OK);
  CHECK(eta == 0.0);
  const auto path = std::filesystem::temp_directory_path() / "spinbath_capi.csv";
  CHECK(sb_trajectory_write_csv(tr, path.string().c_str(), "mc") == SB_OK);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,lambda1,lambda2,lambda3,purity,eta,source");
  std::filesystem::remove(path);
  CHECK(sb_trajectory_write_csv(tr, "/nonexistent-dir/x.csv", nullptr) == SB_ERR_IO);
  sb_trajectory_destroy(tr);
  CHECK(sb_model_run_finite(m, &b0, times, 3, &tr) == SB_ERR_UNSUPPORTED);
  const double unsorted[] = {1.0, 0.0};
  CHECK(sb_model_run_infinite(m, &b0, unsorted, 2, nullptr, 0, &tr) == SB_ERR_INVALID_ARGUMENT);
  sb_mc_spec mc;
  sb_mc_spec_default(&mc);
  mc.samples = 10;
  CHECK(sb_model_run_mc(m, &b0, times, 3, &mc, 0, &tr) == SB_ERR_INVALID_ARGUMENT);
  sb_model_destroy(m);
}

TEST_CASE("null handles are rejected") {
  double z;
  CHECK(sb_model_zbar(nullptr, &z) == SB_ERR_INVALID_ARGUMENT);
  sb_model* m = nullptr;
  CHECK(sb_model_create(nullptr, &m) == SB_ERR_INVALID_ARGUMENT);
  CHECK(sb_trajectory_size(nullptr) == 0u);
  sb_trajectory_destroy(nullptr);
  sb_model_destroy(nullptr);
}

TEST_CASE("self-test rows") {
  REQUIRE(sb_selftest_count() == 12u);
  for (std::size_t i = 0; i < sb_selftest_count(); ++i) {
    sb_kernel_check k;
    REQUIRE(sb_selftest_entry(i, &k) == SB_OK);
    CAPTURE(k.name);
    CHECK(k.passed == 1);
    CHECK(k.target_digits == 12);
  }
  sb_kernel_check k;
  CHECK(sb_selftest_entry(12, &k) == SB_ERR_INVALID_ARGUMENT);
}
