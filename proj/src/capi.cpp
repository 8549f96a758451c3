#include "gop/gop.h"

#include "gop/acquisition.hpp"
#include "gop/problems.hpp"
#include "gop/trace_io.hpp"

#include <chrono>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

struct gop_run {
  gop::RunResult result;
  int dim = 0;
  int64_t wall_ms = 0;
};

namespace {

thread_local std::string g_last_error;

gop_status to_status(gop::ErrorCode code) {
  switch (code) {
    case gop::ErrorCode::invalid_argument: return GOP_ERR_INVALID_ARGUMENT;
    case gop::ErrorCode::duplicate_point: return GOP_ERR_DUPLICATE_POINT;
    case gop::ErrorCode::singular_system: return GOP_ERR_SINGULAR_SYSTEM;
    case gop::ErrorCode::degenerate_data: return GOP_ERR_DEGENERATE_DATA;
    case gop::ErrorCode::no_new_point: return GOP_ERR_NO_NEW_POINT;
    case gop::ErrorCode::non_finite_value: return GOP_ERR_NON_FINITE_VALUE;
  }
  return GOP_ERR_INTERNAL;
}

template <typename Fn>
gop_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return GOP_OK;
  } catch (const gop::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GOP_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

size_t gop_problem_count(void) { return gop::builtin_problems().size(); }

const char* gop_problem_name(size_t index) {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& p : gop::builtin_problems()) out.push_back(p.name);
    return out;
  }();
  if (index >= names.size()) return nullptr;
  return names[index].c_str();
}

int gop_problem_dim(const char* name) {
  if (name == nullptr) return 0;
  try {
    return gop::find_problem(name).objective.domain.dim();
  } catch (const std::exception&) {
    return 0;
  }
}

gop_status gop_run_execute(const gop_run_config* config, gop_run** out) {
  if (config == nullptr || out == nullptr || config->problem == nullptr ||
      config->method == nullptr) {
    g_last_error = "gop_run_execute: null argument";
    return GOP_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    const gop::Problem problem =
        gop::find_problem(config->problem, config->noise, config->seed);
    if (problem.objective.domain.dim() > GOP_MAX_DIM) {
      throw gop::Error(gop::ErrorCode::invalid_argument,
                       "problem dimension exceeds GOP_MAX_DIM");
    }
    gop::RunConfig rc;
    rc.method = gop::parse_method(config->method);
    if (rc.method == gop::Method::rbf) {
      const double gamma = config->gamma > 0.0 ? config->gamma : 1.0;
      rc.kernel = gop::parse_kernel(
          config->kernel != nullptr ? config->kernel : "cubic", gamma);
    }
    rc.stop.max_evaluations = config->budget;
    rc.seed = config->seed;
    if (config->cycle_length > 0) rc.cycle_length = config->cycle_length;

    auto run = std::make_unique<gop_run>();
    run->dim = problem.objective.domain.dim();
    const auto t0 = std::chrono::steady_clock::now();
    run->result = gop::run_optimization(problem.objective, rc);
    const auto t1 = std::chrono::steady_clock::now();
    run->wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    *out = run.release();
  });
}

void gop_run_free(gop_run* run) { delete run; }

gop_run_outcome gop_run_result(const gop_run* run) {
  switch (run->result.status) {
    case gop::RunStatus::budget_exhausted: return GOP_RUN_BUDGET_EXHAUSTED;
    case gop::RunStatus::target_reached: return GOP_RUN_TARGET_REACHED;
    case gop::RunStatus::stalled: return GOP_RUN_STALLED;
    case gop::RunStatus::no_new_point: return GOP_RUN_NO_NEW_POINT;
  }
  return GOP_RUN_BUDGET_EXHAUSTED;
}

size_t gop_run_num_records(const gop_run* run) {
  return run->result.trace.size();
}

gop_status gop_run_record(const gop_run* run, size_t index,
                          gop_trace_record* out) {
  if (run == nullptr || out == nullptr || index >= run->result.trace.size()) {
    g_last_error = "gop_run_record: bad handle or index";
    return GOP_ERR_INVALID_ARGUMENT;
  }
  const gop::TraceRecord& r = run->result.trace[index];
  out->iteration = r.iteration;
  out->dim = run->dim;
  for (int j = 0; j < run->dim; ++j) out->point[j] = r.point[j];
  out->value = r.value;
  out->best_value = r.best_value;
  out->has_target = r.target.has_value() ? 1 : 0;
  out->target = r.target.value_or(0.0);
  out->acquisition_score = r.acquisition_score;
  out->wall_time_ms = r.wall_time_ms;
  return GOP_OK;
}

gop_status gop_run_best(const gop_run* run, double* best_value,
                        double* best_point, int* dim, int* evals) {
  if (run == nullptr || run->result.trace.empty()) {
    g_last_error = "gop_run_best: empty run";
    return GOP_ERR_INVALID_ARGUMENT;
  }
  const gop::RunSummary s =
      gop::summarize("", run->result.trace, run->wall_ms);
  if (best_value != nullptr) *best_value = s.best_value;
  if (dim != nullptr) *dim = run->dim;
  if (best_point != nullptr) {
    for (int j = 0; j < run->dim; ++j) best_point[j] = s.best_point[j];
  }
  if (evals != nullptr) *evals = s.evals;
  return GOP_OK;
}

int64_t gop_run_wall_ms(const gop_run* run) { return run->wall_ms; }

gop_status gop_run_write_csv(const gop_run* run, const char* path) {
  if (run == nullptr || path == nullptr) {
    g_last_error = "gop_run_write_csv: null argument";
    return GOP_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { gop::write_trace_csv(path, run->result.trace); });
}

const char* gop_last_error_message(void) { return g_last_error.c_str(); }

}  // extern "C"
