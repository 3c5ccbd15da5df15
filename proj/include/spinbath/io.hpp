#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinbath/model.hpp"

namespace spinbath {

/// Time grid plus the Bloch vector and purity at each sample.
struct Trajectory {
  std::vector<double> times;
  std::vector<BlochVector> bloch;
  std::vector<double> purity;
  std::vector<double> eta;  // empty unless requested

  std::size_t size() const noexcept { return times.size(); }
};

/// 17 significant digits, locale independent.
std::string format_double(double v);

/// Writes to `path + ".tmp"` then renames over `path`. Throws IoError naming
/// the path.
void write_file_atomically(const std::string& path, const std::string& content);

/// Header `t,lambda1,lambda2,lambda3,purity[,eta][,source]`. The eta column
/// is emitted when the trajectory carries eta values.
std::string trajectory_csv(const Trajectory& traj,
                           const std::optional<std::string>& source = std::nullopt);

void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          const std::optional<std::string>& source = std::nullopt);

/// Throws InvalidArgumentError unless times are finite, >= 0 and sorted.
void validate_times(std::span<const double> times);

/// Evenly spaced grid t_k = t_max * k / steps, k = 0..steps.
std::vector<double> uniform_time_grid(double t_max, int steps);

}  // namespace spinbath
