#include "cli_config.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

namespace spinbath_cli {

namespace {

const std::map<std::string, Mode>& mode_table() {
  static const std::map<std::string, Mode> table{
      {"finite", Mode::Finite},          {"infinite", Mode::Infinite},
      {"oracle-dense", Mode::OracleDense}, {"oracle-mc", Mode::OracleMc},
      {"table1", Mode::Table1},          {"sweep", Mode::Sweep},
      {"selftest", Mode::Selftest},
  };
  return table;
}

std::vector<std::string> mode_names() {
  std::vector<std::string> names;
  for (const auto& [name, mode] : mode_table()) names.push_back(name);
  return names;
}

bool is_trajectory_mode(Mode m) {
  return m == Mode::Finite || m == Mode::Infinite || m == Mode::OracleDense ||
         m == Mode::OracleMc;
}

bool is_finite_mode(Mode m) { return m == Mode::Finite || m == Mode::OracleDense; }

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Checks that need the resolved mode.
void check_mode_requirements(const RunConfig& c, Mode m, const CLI::App& app) {
  const sb_params& p = c.params;
  if (is_finite_mode(m)) {
    if (p.n_bath <= 0) {
      throw UsageError("missing --n: " + std::string(mode_name(m)) + " mode needs the bath size");
    }
    if (p.n_bath % 2 != 0) {
      throw UsageError("--n: N must be even (got " + std::to_string(p.n_bath) + ")");
    }
  } else if (app.count("--n") > 0 && m != Mode::Table1) {
    throw UsageError("--n: " + std::string(mode_name(m)) + " mode is the N -> infinity limit");
  }
  if (m == Mode::Infinite || m == Mode::OracleMc) {
    const double gb = p.g * p.beta;
    if (!(gb > -2.0)) {
      throw UsageError("--g/--beta: g*beta = " + shortest(gb) +
                       " <= -2, the N -> infinity limit diverges");
    }
    if (!(gb * p.delta > -2.0)) {
      throw UsageError("--delta: g*beta*delta = " + shortest(gb * p.delta) +
                       " <= -2, the N -> infinity limit diverges");
    }
  }
  if (c.emit_eta && !(m == Mode::Infinite || m == Mode::OracleMc)) {
    throw UsageError("--emit-eta: only infinite and oracle-mc output has an eta column");
  }
  if (!c.sector_csv.empty() && !is_finite_mode(m)) {
    throw UsageError("--sector-csv: needs a finite bath (finite or oracle-dense mode)");
  }
}

}  // namespace

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Finite: return "finite";
    case Mode::Infinite: return "infinite";
    case Mode::OracleDense: return "oracle-dense";
    case Mode::OracleMc: return "oracle-mc";
    case Mode::Table1: return "table1";
    case Mode::Sweep: return "sweep";
    case Mode::Selftest: return "selftest";
  }
  return "?";
}

std::string sweep_path(const std::string& base, double beta) {
  const std::filesystem::path p(base);
  std::filesystem::path out = p.parent_path();
  out /= p.stem().string() + "_beta=" + shortest(beta) + p.extension().string();
  return out.string();
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig c;
  sb_quad_spec_default(&c.quad);
  sb_mc_spec_default(&c.mc);

  CLI::App app{"Reduced dynamics of a central spin-1/2 in an anisotropic Heisenberg spin bath",
               "spinbath"};
  app.set_config("--config", "", "key=value file mirroring the long flags; flags win");
  app.allow_config_extras(false);
  app.set_version_flag("--version", sb_version());

  std::string mode_option;
  app.add_option("--mode", mode_option, "Run mode (alternative to `run <mode>`)")
      ->check(CLI::IsMember(mode_names()));

  app.add_option("--mu", c.params.mu, "Local field on the central spin");
  app.add_option("--gamma", c.params.gamma, "Longitudinal system-bath coupling");
  app.add_option("--alpha", c.params.alpha, "Transverse system-bath coupling (time unit)");
  app.add_option("--g", c.params.g, "Intra-bath coupling (g > 0 antiferromagnetic)");
  app.add_option("--delta", c.params.delta, "Bath anisotropy");
  app.add_option("--beta", c.params.beta, "Inverse bath temperature");
  app.add_option("--n", c.params.n_bath, "Bath size N (even); finite and oracle-dense modes");
  app.add_option("--l1", c.bloch0.l1, "Initial Bloch component lambda_1");
  app.add_option("--l2", c.bloch0.l2, "Initial Bloch component lambda_2");
  app.add_option("--l3", c.bloch0.l3, "Initial Bloch component lambda_3");
  app.add_option("--t-max", c.t_max, "Last time point (units of 1/energy)");
  app.add_option("--steps", c.steps, "Number of time steps; the grid has steps + 1 points");
  app.add_option("--hermite-order", c.quad.hermite_order, "Starting Gauss-Hermite order");
  app.add_option("--laguerre-order", c.quad.laguerre_order, "Starting Gauss-Laguerre order");
  app.add_option("--abs-tol", c.quad.abs_tol, "Quadrature convergence tolerance");
  app.add_option("--max-refine", c.quad.max_refine, "Largest Gauss order tried");
  app.add_option("--samples", c.mc.samples, "Monte-Carlo samples per time point");
  app.add_option("--seed", c.mc.seed, "Monte-Carlo seed");
  app.add_option("--batch", c.mc.batch, "Monte-Carlo samples per substream");
  app.add_option("-o,--output", c.output, "CSV output path (sweep: base path)");
  app.add_flag("--emit-eta", c.emit_eta, "Add an eta column (infinite and oracle-mc)");
  app.add_option("--sector-csv", c.sector_csv, "Also dump the sector table (finite N)");
  app.add_option("--sweep-beta", c.sweep_betas, "Comma-separated beta values for sweep mode")
      ->delimiter(',');
  std::string sweep_mode = "infinite";
  app.add_option("--sweep-mode", sweep_mode, "Mode run at every sweep point")
      ->check(CLI::IsMember({"finite", "infinite", "oracle-dense", "oracle-mc"}));
  app.add_option("--sizes", c.table_sizes, "Bath sizes for table1")->delimiter(',');
  app.add_option("--threads", c.threads, "Worker threads (0 = SPINBATH_THREADS or auto)");
  bool selftest_flag = false;
  app.add_flag("--selftest", selftest_flag, "Print the special-function self-test table");

  std::string run_mode;
  CLI::App* run_cmd = app.add_subcommand("run", "Run one mode")->fallthrough();
  run_cmd->add_option("mode", run_mode, "finite | infinite | oracle-dense | oracle-mc | "
                                        "table1 | sweep | selftest")
      ->check(CLI::IsMember(mode_names()));
  std::string engine;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Independent reference engines")->fallthrough();
  oracle_cmd->add_option("engine", engine, "dense | mc")
      ->required()
      ->check(CLI::IsMember({"dense", "mc"}));
  CLI::App* table_cmd = app.add_subcommand("table1", "2^-N Z_N table")->fallthrough();
  CLI::App* selftest_cmd = app.add_subcommand("selftest", "Kernel self-test")->fallthrough();
  app.require_subcommand(0, 1);

  std::vector<char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested(std::string(sb_version()) + "\n");
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  std::vector<std::pair<std::string, Mode>> sources;
  if (!mode_option.empty()) sources.emplace_back("--mode", mode_table().at(mode_option));
  if (!run_mode.empty()) sources.emplace_back("run", mode_table().at(run_mode));
  if (oracle_cmd->parsed()) {
    sources.emplace_back("oracle", engine == "dense" ? Mode::OracleDense : Mode::OracleMc);
  }
  if (table_cmd->parsed()) sources.emplace_back("table1", Mode::Table1);
  if (selftest_cmd->parsed() || selftest_flag) sources.emplace_back("selftest", Mode::Selftest);
  if (sources.empty()) {
    throw UsageError("missing mode: use `run <mode>`, `oracle dense|mc`, `table1`, "
                     "`selftest` or --mode");
  }
  for (const auto& [where, mode] : sources) {
    if (mode != sources.front().second) {
      throw UsageError("conflicting modes: " + sources.front().first + " selects " +
                       mode_name(sources.front().second) + " but " + where + " selects " +
                       mode_name(mode));
    }
  }
  c.mode = sources.front().second;
  c.sweep_mode = mode_table().at(sweep_mode);

  if (c.mode == Mode::Table1) {
    if (app.count("--g") == 0) c.params.g = 2.0;
    if (app.count("--delta") == 0) c.params.delta = 5.0;
    if (app.count("--beta") == 0) c.params.beta = 1.0;
    for (int n : c.table_sizes) {
      if (n <= 0 || n % 2 != 0) {
        throw UsageError("--sizes: N must be even and positive (got " + std::to_string(n) + ")");
      }
    }
  }

  if (!(c.params.alpha > 0.0)) throw UsageError("--alpha: must be > 0");
  if (c.params.beta < 0.0) throw UsageError("--beta: must be >= 0");
  for (const double v : {c.params.mu, c.params.gamma, c.params.alpha, c.params.g,
                         c.params.delta, c.params.beta}) {
    if (!std::isfinite(v)) throw UsageError("model parameters must be finite");
  }
  const sb_bloch& b = c.bloch0;
  if (!(b.l1 * b.l1 + b.l2 * b.l2 + b.l3 * b.l3 <= 1.0 + 1e-12)) {
    throw UsageError("--l1/--l2/--l3: the initial Bloch vector must have norm <= 1");
  }

  const bool needs_grid = is_trajectory_mode(c.mode) || c.mode == Mode::Sweep;
  if (needs_grid) {
    if (app.count("--t-max") == 0) throw UsageError("missing --t-max");
    if (!(c.t_max >= 0.0) || !std::isfinite(c.t_max)) {
      throw UsageError("--t-max: must be finite and >= 0");
    }
    if (c.steps < 1) throw UsageError("--steps: must be >= 1");
    if (c.output.empty()) throw UsageError("missing --output");
  }

  if (c.mode == Mode::Sweep) {
    if (c.sweep_betas.empty()) throw UsageError("missing --sweep-beta");
    for (double beta : c.sweep_betas) {
      if (!(beta >= 0.0)) throw UsageError("--sweep-beta: values must be >= 0");
      RunConfig point = c;
      point.params.beta = beta;
      check_mode_requirements(point, c.sweep_mode, app);
    }
  } else if (is_trajectory_mode(c.mode)) {
    check_mode_requirements(c, c.mode, app);
  }
  return c;
}

namespace {

std::string status_message(sb_status s) {
  const std::string msg = sb_last_error();
  return msg.empty() ? "error code " + std::to_string(static_cast<int>(s)) : msg;
}

int exit_code(sb_status s) { return s == SB_ERR_TOLERANCE ? 2 : 1; }

struct ModelDeleter {
  void operator()(sb_model* m) const { sb_model_destroy(m); }
};
struct TrajectoryDeleter {
  void operator()(sb_trajectory* t) const { sb_trajectory_destroy(t); }
};
using ModelPtr = std::unique_ptr<sb_model, ModelDeleter>;
using TrajectoryPtr = std::unique_ptr<sb_trajectory, TrajectoryDeleter>;

int fail(sb_status s) {
  std::cerr << "spinbath: " << status_message(s) << "\n";
  return exit_code(s);
}

int run_selftest() {
  const std::size_t count = sb_selftest_count();
  bool ok = count > 0;
  std::cout << "kernel,value_re,value_im,reference_re,reference_im,relative_error,digits,status\n";
  for (std::size_t i = 0; i < count; ++i) {
    sb_kernel_check k{};
    if (const sb_status s = sb_selftest_entry(i, &k); s != SB_OK) return fail(s);
    std::cout.precision(17);
    std::cout << k.name << ',' << k.value_re << ',' << k.value_im << ',' << k.reference_re << ','
              << k.reference_im << ',';
    std::cout.precision(3);
    std::cout << k.relative_error << ',' << k.target_digits << ','
              << (k.passed ? "ok" : "FAIL") << '\n';
    ok = ok && k.passed;
  }
  return ok ? 0 : 2;
}

int run_table1(const RunConfig& c) {
  std::cout << "N,scaled_partition\n";
  std::cout.precision(10);
  for (int n : c.table_sizes) {
    sb_params p = c.params;
    p.n_bath = n;
    sb_model* raw = nullptr;
    if (const sb_status s = sb_model_create(&p, &raw); s != SB_OK) return fail(s);
    const ModelPtr model(raw);
    double z = 0.0;
    if (const sb_status s = sb_model_scaled_partition(model.get(), &z); s != SB_OK) {
      return fail(s);
    }
    std::cout << n << ',' << z << '\n';
  }
  sb_params p = c.params;
  p.n_bath = 0;
  sb_model* raw = nullptr;
  if (const sb_status s = sb_model_create(&p, &raw); s != SB_OK) return fail(s);
  const ModelPtr model(raw);
  double zbar = 0.0;
  if (const sb_status s = sb_model_zbar(model.get(), &zbar); s != SB_OK) return fail(s);
  std::cout << "inf," << zbar << '\n';
  return 0;
}

int run_trajectory(const RunConfig& c, Mode mode, const std::string& output) {
  sb_params p = c.params;
  if (!is_finite_mode(mode)) p.n_bath = 0;
  sb_model* raw = nullptr;
  if (const sb_status s = sb_model_create(&p, &raw); s != SB_OK) return fail(s);
  const ModelPtr model(raw);

  std::vector<double> times(static_cast<std::size_t>(c.steps) + 1);
  for (int k = 0; k <= c.steps; ++k) times[k] = c.t_max * k / c.steps;

  sb_trajectory* traj_raw = nullptr;
  sb_status s = SB_OK;
  const char* source = nullptr;
  switch (mode) {
    case Mode::Finite:
      s = sb_model_run_finite(model.get(), &c.bloch0, times.data(), times.size(), &traj_raw);
      break;
    case Mode::Infinite:
      s = sb_model_run_infinite(model.get(), &c.bloch0, times.data(), times.size(), &c.quad,
                                c.emit_eta ? 1 : 0, &traj_raw);
      break;
    case Mode::OracleDense:
      source = "dense";
      s = sb_model_run_dense(model.get(), &c.bloch0, times.data(), times.size(), &traj_raw);
      break;
    case Mode::OracleMc:
      source = "mc";
      s = sb_model_run_mc(model.get(), &c.bloch0, times.data(), times.size(), &c.mc,
                          c.emit_eta ? 1 : 0, &traj_raw);
      break;
    default:
      std::cerr << "spinbath: " << mode_name(mode) << " is not a trajectory mode\n";
      return 1;
  }
  if (s != SB_OK) return fail(s);
  const TrajectoryPtr traj(traj_raw);
  if (const sb_status w = sb_trajectory_write_csv(traj.get(), output.c_str(), source); w != SB_OK) {
    return fail(w);
  }
  if (!c.sector_csv.empty()) {
    if (const sb_status w = sb_model_write_sector_csv(model.get(), c.sector_csv.c_str());
        w != SB_OK) {
      return fail(w);
    }
  }
  std::cout << "wrote " << output << " (" << sb_trajectory_size(traj.get()) << " rows)\n";
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  if (config.threads > 0) sb_set_threads(config.threads);
  switch (config.mode) {
    case Mode::Selftest: return run_selftest();
    case Mode::Table1: return run_table1(config);
    case Mode::Sweep:
      for (double beta : config.sweep_betas) {
        RunConfig point = config;
        point.params.beta = beta;
        const int code = run_trajectory(point, config.sweep_mode, sweep_path(config.output, beta));
        if (code != 0) return code;
      }
      return 0;
    default: return run_trajectory(config, config.mode, config.output);
  }
}

}  // namespace spinbath_cli
