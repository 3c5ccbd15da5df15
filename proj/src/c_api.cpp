#include "spinbath/spinbath.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinbath/bath_spectrum.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/finite_dynamics.hpp"
#include "spinbath/infinite_dynamics.hpp"
#include "spinbath/io.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/parallel.hpp"
#include "spinbath/special_functions.hpp"

using namespace spinbath;

struct sb_model {
  ModelParams params;
  std::optional<SectorTable> table;
};

struct sb_trajectory {
  Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

sb_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return SB_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidState: return SB_ERR_INVALID_STATE;
    case ErrorCode::Domain: return SB_ERR_DOMAIN;
    case ErrorCode::Unsupported: return SB_ERR_UNSUPPORTED;
    case ErrorCode::Tolerance: return SB_ERR_TOLERANCE;
    case ErrorCode::Io: return SB_ERR_IO;
  }
  return SB_ERR_INTERNAL;
}

template <typename F>
sb_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SB_ERR_INTERNAL;
  }
}

void require(const void* ptr, const char* name) {
  if (ptr == nullptr) throw InvalidArgumentError(std::string(name) + " is NULL");
}

ModelParams to_model(const sb_params& p) {
  ModelParams m;
  m.mu = p.mu;
  m.gamma = p.gamma;
  m.alpha = p.alpha;
  m.g = p.g;
  m.delta = p.delta;
  m.beta = p.beta;
  if (p.n_bath < 0) throw InvalidArgumentError("n_bath must be >= 0 (0 = infinite)");
  if (p.n_bath > 0) m.n_bath = p.n_bath;
  return m;
}

void validate_model(const ModelParams& m) {
  m.validate();
  if (!m.is_finite()) GaussLimitParams::from_model(m).validate();
}

QuadratureSpec to_quad(const sb_quad_spec* q) {
  QuadratureSpec s;
  if (q != nullptr) {
    s.hermite_order = q->hermite_order;
    s.laguerre_order = q->laguerre_order;
    s.abs_tol = q->abs_tol;
    s.max_refine = q->max_refine;
  }
  s.validate();
  return s;
}

McSpec to_mc(const sb_mc_spec* m) {
  McSpec s;
  if (m != nullptr) {
    s.samples = m->samples;
    s.seed = m->seed;
    s.batch = m->batch;
  }
  s.validate();
  return s;
}

BlochVector to_bloch(const sb_bloch* b) {
  require(b, "b0");
  return BlochVector{b->l1, b->l2, b->l3};
}

std::span<const double> to_times(const double* times, size_t count) {
  if (count > 0) require(times, "times");
  return {times, count};
}

const sb_model& model_ref(const sb_model* model) {
  require(model, "model");
  return *model;
}

void emit(Trajectory traj, sb_trajectory** out) {
  require(out, "out");
  *out = new sb_trajectory{std::move(traj)};
}

const std::vector<KernelCheck>& selftest_rows() {
  static const std::vector<KernelCheck> rows = kernel_selftest();
  return rows;
}

}  // namespace

extern "C" {

const char* sb_last_error(void) { return g_last_error.c_str(); }

const char* sb_version(void) { return "0.1.0"; }

void sb_params_default(sb_params* p) {
  if (p == nullptr) return;
  *p = sb_params{0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0};
}

void sb_quad_spec_default(sb_quad_spec* q) {
  if (q == nullptr) return;
  const QuadratureSpec s;
  *q = sb_quad_spec{s.hermite_order, s.laguerre_order, s.abs_tol, s.max_refine};
}

void sb_mc_spec_default(sb_mc_spec* m) {
  if (m == nullptr) return;
  const McSpec s;
  *m = sb_mc_spec{s.samples, s.seed, s.batch};
}

sb_status sb_params_validate(const sb_params* p) {
  return guarded([&] {
    require(p, "params");
    validate_model(to_model(*p));
  });
}

sb_status sb_set_threads(size_t n) {
  return guarded([&] { set_thread_count(n); });
}

sb_status sb_model_create(const sb_params* p, sb_model** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "out");
    *out = nullptr;
    const ModelParams m = to_model(*p);
    validate_model(m);
    auto model = std::make_unique<sb_model>();
    model->params = m;
    if (m.is_finite()) model->table = build_sector_table(m);
    *out = model.release();
  });
}

void sb_model_destroy(sb_model* model) { delete model; }

sb_status sb_model_scaled_partition(const sb_model* model, double* out) {
  return guarded([&] {
    const sb_model& m = model_ref(model);
    require(out, "out");
    if (!m.table) throw UnsupportedError("the partition function needs a finite N");
    *out = std::exp(m.table->log_scaled_partition());
  });
}

sb_status sb_model_zbar(const sb_model* model, double* out) {
  return guarded([&] {
    const sb_model& m = model_ref(model);
    require(out, "out");
    *out = zbar(GaussLimitParams::from_model(m.params));
  });
}

sb_status sb_model_decoherence_time(const sb_model* model, double* out) {
  return guarded([&] {
    const sb_model& m = model_ref(model);
    require(out, "out");
    *out = decoherence_time(GaussLimitParams::from_model(m.params)) / m.params.alpha;
  });
}

sb_status sb_model_write_sector_csv(const sb_model* model, const char* path) {
  return guarded([&] {
    const sb_model& m = model_ref(model);
    require(path, "path");
    if (!m.table) throw UnsupportedError("sector tables need a finite N");
    write_sector_csv(*m.table, path);
  });
}

sb_status sb_model_run_finite(const sb_model* model, const sb_bloch* b0, const double* times,
                              size_t count, sb_trajectory** out) {
  return guarded([&] {
    const sb_model& m = model_ref(model);
    if (!m.table) throw UnsupportedError("finite mode needs a finite N");
    emit(trajectory_finite(m.params, to_bloch(b0), to_times(times, count)), out);
  });
}

sb_status sb_model_run_infinite(const sb_model* model, const sb_bloch* b0, const double* times,
                                size_t count, const sb_quad_spec* quad, int emit_eta,
                                sb_trajectory** out) {
  return guarded([&] {
    const sb_model& m = model_ref(model);
    ModelParams limit = m.params;
    limit.n_bath.reset();
    emit(trajectory_infinite(limit, to_bloch(b0), to_times(times, count), to_quad(quad),
                             emit_eta != 0),
         out);
  });
}

sb_status sb_model_run_dense(const sb_model* model, const sb_bloch* b0, const double* times,
                             size_t count, sb_trajectory** out) {
  return guarded([&] {
    const sb_model& m = model_ref(model);
    if (!m.table) throw UnsupportedError("the dense oracle needs a finite N");
    emit(evolve_dense(m.params, to_bloch(b0), to_times(times, count)), out);
  });
}

sb_status sb_model_run_mc(const sb_model* model, const sb_bloch* b0, const double* times,
                          size_t count, const sb_mc_spec* mc, int emit_eta, sb_trajectory** out) {
  return guarded([&] {
    const sb_model& m = model_ref(model);
    ModelParams limit = m.params;
    limit.n_bath.reset();
    emit(mc_trajectory(limit, to_bloch(b0), to_times(times, count), to_mc(mc), emit_eta != 0),
         out);
  });
}

void sb_trajectory_destroy(sb_trajectory* traj) { delete traj; }

size_t sb_trajectory_size(const sb_trajectory* traj) {
  return traj == nullptr ? 0 : traj->traj.size();
}

sb_status sb_trajectory_point(const sb_trajectory* traj, size_t i, double* t, sb_bloch* bloch,
                              double* purity) {
  return guarded([&] {
    require(traj, "trajectory");
    if (i >= traj->traj.size()) throw InvalidArgumentError("trajectory index out of range");
    if (t != nullptr) *t = traj->traj.times[i];
    if (bloch != nullptr) {
      const BlochVector& b = traj->traj.bloch[i];
      *bloch = sb_bloch{b.l1, b.l2, b.l3};
    }
    if (purity != nullptr) *purity = traj->traj.purity[i];
  });
}

int sb_trajectory_has_eta(const sb_trajectory* traj) {
  return traj != nullptr && !traj->traj.eta.empty() ? 1 : 0;
}

sb_status sb_trajectory_eta(const sb_trajectory* traj, size_t i, double* eta) {
  return guarded([&] {
    require(traj, "trajectory");
    require(eta, "eta");
    if (traj->traj.eta.empty()) throw InvalidStateError("trajectory carries no eta column");
    if (i >= traj->traj.eta.size()) throw InvalidArgumentError("trajectory index out of range");
    *eta = traj->traj.eta[i];
  });
}

sb_status sb_trajectory_write_csv(const sb_trajectory* traj, const char* path,
                                  const char* source) {
  return guarded([&] {
    require(traj, "trajectory");
    require(path, "path");
    std::optional<std::string> src;
    if (source != nullptr) src = source;
    write_trajectory_csv(traj->traj, path, src);
  });
}

size_t sb_selftest_count(void) {
  try {
    return selftest_rows().size();
  } catch (...) {
    return 0;
  }
}

sb_status sb_selftest_entry(size_t i, sb_kernel_check* out) {
  return guarded([&] {
    require(out, "out");
    const auto& rows = selftest_rows();
    if (i >= rows.size()) throw InvalidArgumentError("self-test index out of range");
    const KernelCheck& k = rows[i];
    out->name = k.name.c_str();
    out->value_re = k.value.real();
    out->value_im = k.value.imag();
    out->reference_re = k.reference.real();
    out->reference_im = k.reference.imag();
    out->relative_error = k.relative_error;
    out->target_digits = k.target_digits;
    out->passed = k.passed() ? 1 : 0;
  });
}

}  // extern "C"
