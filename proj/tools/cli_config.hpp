#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "spinbath/spinbath.h"

namespace spinbath_cli {

enum class Mode { Finite, Infinite, OracleDense, OracleMc, Table1, Sweep, Selftest };

const char* mode_name(Mode m);

struct RunConfig {
  Mode mode = Mode::Infinite;
  sb_params params{0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0};  // n_bath 0 = infinite
  sb_bloch bloch0{0.375, 0.375, 0.5};
  double t_max = 0.0;
  int steps = 400;
  sb_quad_spec quad{};
  sb_mc_spec mc{};
  std::string output;
  bool emit_eta = false;
  std::string sector_csv;
  std::vector<double> sweep_betas;
  Mode sweep_mode = Mode::Infinite;
  std::vector<int> table_sizes{10, 100, 1000, 5000};
  std::size_t threads = 0;
};

/// Bad or conflicting command line; the message names the flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help / --version; carries the text to print.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `spinbath <command> ...` (args[0] is the program name). Options may
/// also come from a key=value file given with --config; command-line flags
/// take precedence over the file.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes a parsed config. Returns 0 on success, 1 on usage or input
/// errors, 2 when a numerical tolerance was not met.
int run(const RunConfig& config);

/// `<stem>_beta=<v><ext>` for sweep outputs.
std::string sweep_path(const std::string& base, double beta);

}  // namespace spinbath_cli
