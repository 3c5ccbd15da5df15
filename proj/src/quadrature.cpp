#include "spinbath/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal Jacobi
// matrix, weights mu0 * (first eigenvector component)^2.
GaussRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Tolerance, "Jacobi matrix eigensolver failed");
  }
  const auto n = diag.size();
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

GaussRule make_hermite(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n - 1);
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(k / 2.0);
  GaussRule rule = golub_welsch(diag, off, std::sqrt(std::numbers::pi));
  // Symmetrize: the exact rule is even.
  for (int i = 0; i < n / 2; ++i) {
    const int k = n - 1 - i;
    const double x = 0.5 * (rule.nodes[k] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[k] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[k] = x;
    rule.weights[i] = rule.weights[k] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussRule make_laguerre(int n) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n - 1);
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) off(k - 1) = k;
  return golub_welsch(diag, off, 1.0);
}

GaussRule make_legendre(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n - 1);
  for (int k = 1; k < n; ++k) off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  GaussRule rule = golub_welsch(diag, off, 2.0);
  for (int i = 0; i < n / 2; ++i) {
    const int k = n - 1 - i;
    const double x = 0.5 * (rule.nodes[k] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[k] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[k] = x;
    rule.weights[i] = rule.weights[k] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

class RuleCache {
 public:
  explicit RuleCache(GaussRule (*make)(int)) : make_(make) {}

  const GaussRule& get(int n) {
    if (n < 2) throw InvalidArgumentError("Gauss rule order must be >= 2");
    std::lock_guard lock(mutex_);
    auto it = rules_.find(n);
    if (it == rules_.end()) it = rules_.emplace(n, std::make_unique<GaussRule>(make_(n))).first;
    return *it->second;
  }

 private:
  GaussRule (*make_)(int);
  std::mutex mutex_;
  std::map<int, std::unique_ptr<GaussRule>> rules_;
};

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  std::complex<double> value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod15(const std::function<std::complex<double>(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::complex<double> fc = f(center);
  std::complex<double> kronrod = fc * kWgk[7];
  std::complex<double> gauss = fc * kWg[3];
  for (int k = 0; k < 7; ++k) {
    const double dx = half * kXgk[k];
    const std::complex<double> pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[k] * pair;
    if (k % 2 == 1) gauss += kWg[k / 2] * pair;
  }
  return Segment{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

const GaussRule& gauss_hermite(int n) {
  static RuleCache cache(&make_hermite);
  return cache.get(n);
}

const GaussRule& gauss_laguerre(int n) {
  static RuleCache cache(&make_laguerre);
  return cache.get(n);
}

const GaussRule& gauss_legendre(int n) {
  static RuleCache cache(&make_legendre);
  return cache.get(n);
}

AdaptiveResult integrate_adaptive(const std::function<std::complex<double>(double)>& f, double a,
                                  double b, double abs_tol, double rel_tol, int max_intervals) {
  std::priority_queue<Segment> heap;
  Segment first = kronrod15(f, a, b);
  std::complex<double> total = first.value;
  double error = first.error;
  heap.push(first);
  int intervals = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(total)) || !std::isfinite(error)) {
    if (!std::isfinite(error) || !std::isfinite(std::abs(total))) {
      throw ToleranceError("adaptive quadrature met a non-finite integrand value",
                           std::abs(total), error);
    }
    if (intervals >= max_intervals) {
      throw ToleranceError("adaptive quadrature exhausted " + std::to_string(max_intervals) +
                               " intervals; error estimate " + std::to_string(error),
                           std::abs(total) - error, std::abs(total));
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum from the leaves to drop the drift of the running updates.
  std::complex<double> exact_total = 0.0;
  double exact_error = 0.0;
  while (!heap.empty()) {
    exact_total += heap.top().value;
    exact_error += heap.top().error;
    heap.pop();
  }
  return AdaptiveResult{exact_total, exact_error, intervals};
}

double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, double rel_tol, int max_intervals) {
  return integrate_adaptive([&f](double x) { return std::complex<double>(f(x), 0.0); }, a, b,
                            abs_tol, rel_tol, max_intervals)
      .value.real();
}

}  // namespace spinbath
