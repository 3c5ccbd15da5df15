#include "spinbath/bath_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "spinbath/errors.hpp"
#include "spinbath/io.hpp"
#include "spinbath/parallel.hpp"

namespace spinbath {

namespace {

constexpr int kExactDegeneracyLimit = 60;

__extension__ typedef unsigned __int128 Wide;

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Wide c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(c);
}

void check_even(int n) {
  if (n <= 0) throw InvalidArgumentError("N must be positive");
  if (n % 2 != 0) throw UnsupportedError("N must be even (got " + std::to_string(n) + ")");
}

}  // namespace

double log_degeneracy(int n, int j) {
  check_even(n);
  const int half = n / 2;
  if (j < 0 || j > half) {
    throw InvalidArgumentError("j=" + std::to_string(j) + " out of range [0, N/2]");
  }
  if (n <= kExactDegeneracyLimit) {
    // nu(N, j) = C(N, N/2 - j) - C(N, N/2 - j - 1)
    const std::uint64_t nu = binomial(n, half - j) - binomial(n, half - j - 1);
    return std::log(static_cast<double>(nu));
  }
  return std::log(2.0 * j + 1.0) - std::log(half + j + 1.0) + std::lgamma(n + 1.0) -
         std::lgamma(half - j + 1.0) - std::lgamma(half + j + 1.0);
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(top)) return top;
  std::vector<double> shifted(xs.size());
  std::transform(xs.begin(), xs.end(), shifted.begin(),
                 [top](double x) { return std::exp(x - top); });
  return top + std::log(pairwise_sum(shifted));
}

double SectorTable::weight(std::size_t i) const { return std::exp(entries[i].log_w - log_zn); }

double SectorTable::log_scaled_partition() const { return log_zn - n * std::log(2.0); }

SectorTable build_sector_table(const ModelParams& p) {
  p.validate();
  if (!p.is_finite()) throw UnsupportedError("sector table needs a finite N");
  const int n = *p.n_bath;
  const int half = n / 2;

  SectorTable table;
  table.n = n;
  table.entries.resize(static_cast<std::size_t>(half + 1) * (half + 1));

  // Sector j starts after all sectors j' > j: sum_{j'=j+1}^{half} (2j'+1).
  auto offset = [half](int j) {
    return static_cast<std::size_t>((half + 1) * (half + 1) - (j + 1) * (j + 1));
  };
  parallel_for(static_cast<std::size_t>(half + 1), [&](std::size_t idx) {
    const int j = half - static_cast<int>(idx);
    const double log_nu = log_degeneracy(n, j);
    std::size_t k = offset(j);
    for (int m = -j; m <= j; ++m, ++k) {
      SectorEntry& e = table.entries[k];
      e.j = j;
      e.m = m;
      e.log_nu = log_nu;
      e.e_bath = (p.g / n) * (j * (j + 1.0) + (p.delta - 1.0) * m * static_cast<double>(m));
      e.log_w = log_nu - p.beta * e.e_bath;
    }
  });

  std::vector<double> log_ws(table.entries.size());
  std::transform(table.entries.begin(), table.entries.end(), log_ws.begin(),
                 [](const SectorEntry& e) { return e.log_w; });
  table.log_zn = log_sum_exp(log_ws);
  return table;
}

double isotropic_log_partition(int n, double g_beta) {
  check_even(n);
  const int half = n / 2;
  std::vector<double> terms;
  terms.reserve(half + 1);
  for (int j = half; j >= 0; --j) {
    terms.push_back(log_degeneracy(n, j) + std::log(2.0 * j + 1.0) -
                    g_beta * j * (j + 1.0) / n);
  }
  return log_sum_exp(terms);
}

namespace {

// 2^-N sum over the beta = 0 table of value(j, m).
template <typename F>
double tracial_average(int n, F value) {
  ModelParams p;
  p.n_bath = n;
  const SectorTable table = build_sector_table(p);
  std::vector<double> terms(table.entries.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const SectorEntry& e = table.entries[i];
    terms[i] = std::exp(e.log_nu - n * std::log(2.0)) * value(e.j, e.m);
  }
  return pairwise_sum(terms);
}

}  // namespace

double tracial_moment_jz2(int n) {
  return tracial_average(n, [n](int, int m) { return static_cast<double>(m) * m / n; });
}

double tracial_moment_jpm(int n) {
  return tracial_average(n, [n](int j, int m) {
    return static_cast<double>(j + m) * (j - m + 1) / n;
  });
}

double log_degeneracy_sum(int n) {
  check_even(n);
  std::vector<double> terms;
  for (int j = n / 2; j >= 0; --j) terms.push_back(log_degeneracy(n, j) + std::log(2.0 * j + 1.0));
  return log_sum_exp(terms);
}

void write_sector_csv(const SectorTable& table, const std::string& path) {
  std::ostringstream os;
  os << "j,m,log_nu,e_bath\n";
  for (const SectorEntry& e : table.entries) {
    os << e.j << ',' << e.m << ',' << format_double(e.log_nu) << ','
       << format_double(e.e_bath) << '\n';
  }
  write_file_atomically(path, os.str());
}

}  // namespace spinbath
