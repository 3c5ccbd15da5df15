#pragma once

#include <span>
#include <string>
#include <vector>

#include "spinbath/model.hpp"

namespace spinbath {

/// One (j, m) sector of the bath: an eigenspace of J^2 and J_z repeated
/// nu(N, j) times.
struct SectorEntry {
  int j = 0;
  int m = 0;
  double log_nu = 0.0;   // log nu(N, j)
  double e_bath = 0.0;   // (g/N)[j(j+1) + (delta - 1) m^2]
  double log_w = 0.0;    // log_nu - beta * e_bath, unnormalized
};

/// All (N/2 + 1)^2 sectors, j descending and m ascending within each j.
struct SectorTable {
  int n = 0;
  std::vector<SectorEntry> entries;
  double log_zn = 0.0;  // log Z_N

  /// Normalized thermal weight nu * exp(-beta E) / Z_N of entry i.
  double weight(std::size_t i) const;
  /// log(2^-N Z_N).
  double log_scaled_partition() const;
};

/// log nu(N, j), the multiplicity of spin j in N spin-1/2 particles.
/// Exact integer arithmetic for N <= 60, log-gamma otherwise.
double log_degeneracy(int n, int j);

/// max + log(sum exp(x - max)), pairwise reduced. Empty input gives -inf.
double log_sum_exp(std::span<const double> xs);

/// Requires a finite, even N.
SectorTable build_sector_table(const ModelParams& p);

/// Isotropic shortcut log sum_j nu (2j+1) exp(-g beta j(j+1)/N); only equal
/// to build_sector_table(p).log_zn when delta == 1.
double isotropic_log_partition(int n, double g_beta);

/// 2^-N tr[(J_z / sqrt N)^2] from the beta = 0 table. Equals 1/4.
double tracial_moment_jz2(int n);

/// 2^-N tr[J+ J- / N] from the beta = 0 table. Equals 1/2.
double tracial_moment_jpm(int n);

/// log(sum_j nu(N, j)(2j + 1)); equals N log 2.
double log_degeneracy_sum(int n);

/// CSV with header `j,m,log_nu,e_bath`, written atomically.
void write_sector_csv(const SectorTable& table, const std::string& path);

}  // namespace spinbath
