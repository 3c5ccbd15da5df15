#include "spinbath/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "spinbath/errors.hpp"

namespace spinbath {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_file_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename " + tmp + " to " + path);
  }
}

std::string trajectory_csv(const Trajectory& traj, const std::optional<std::string>& source) {
  const bool with_eta = !traj.eta.empty();
  std::string out = "t,lambda1,lambda2,lambda3,purity";
  if (with_eta) out += ",eta";
  if (source) out += ",source";
  out += '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const BlochVector& b = traj.bloch[i];
    out += format_double(traj.times[i]);
    for (double v : {b.l1, b.l2, b.l3, traj.purity[i]}) {
      out += ',';
      out += format_double(v);
    }
    if (with_eta) {
      out += ',';
      out += format_double(traj.eta[i]);
    }
    if (source) {
      out += ',';
      out += *source;
    }
    out += '\n';
  }
  return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          const std::optional<std::string>& source) {
  write_file_atomically(path, trajectory_csv(traj, source));
}

void validate_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
      throw InvalidArgumentError("times must be finite and non-negative");
    }
    if (i > 0 && times[i] < times[i - 1]) throw InvalidArgumentError("times must be sorted");
  }
}

std::vector<double> uniform_time_grid(double t_max, int steps) {
  if (steps < 1) throw InvalidArgumentError("steps must be >= 1");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw InvalidArgumentError("t_max must be finite and >= 0");
  }
  std::vector<double> times(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) times[k] = t_max * k / steps;
  return times;
}

}  // namespace spinbath
