#include "gop/acquisition.hpp"

#include "gop/log.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

namespace gop {

namespace {

constexpr double kRejected = 1e300;  // finite so the solver keeps moving

/// Keep points at pairwise distance > eps, best values first, so the kernel
/// matrix of a clustered late-stage sample stays factorable.
SampleSet thin_set(const SampleSet& set, double eps) {
  std::vector<int> order(set.size());
  for (int i = 0; i < set.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return set.values()[a] < set.values()[b];
  });
  SampleSet out(set.domain());
  for (int i : order) {
    if (out.size() == 0 ||
        out.min_distance_to(set.point(i)) > std::max(eps, set.duplicate_tolerance())) {
      out = out.add(set.point(i), set.values()[i]);
    }
  }
  return out;
}

/// Run the solver up to 1 + 3 times with fresh seeds until the returned point
/// clears the duplicate tolerance.
Vector search_non_duplicate(const ScalarFn& objective, const SampleSet& set,
                            const AuxSolver& solver, double* score) {
  for (int attempt = 0; attempt <= 3; ++attempt) {
    AuxSolver s = solver;
    s.seed = mix_seed(solver.seed, static_cast<std::uint64_t>(attempt));
    const SolveResult res = minimize(objective, set.domain(), s);
    if (set.min_distance_to(res.point) > set.duplicate_tolerance()) {
      *score = res.value;
      return res.point;
    }
  }
  throw Error(ErrorCode::no_new_point,
              "acquisition: every candidate collides with an existing sample");
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "rbf") return Method::rbf;
  if (name == "kriging_pi") return Method::kriging_pi;
  if (name == "kriging_ei") return Method::kriging_ei;
  throw Error(ErrorCode::invalid_argument, "unknown method: " + name);
}

std::string method_name(Method method) {
  switch (method) {
    case Method::rbf: return "rbf";
    case Method::kriging_pi: return "kriging_pi";
    case Method::kriging_ei: return "kriging_ei";
  }
  return "?";
}

std::string run_status_name(RunStatus status) {
  switch (status) {
    case RunStatus::budget_exhausted: return "budget_exhausted";
    case RunStatus::target_reached: return "target_reached";
    case RunStatus::stalled: return "stalled";
    case RunStatus::no_new_point: return "no_new_point";
  }
  return "?";
}

double choose_target_rbf(double s_min, const Vector& f_values,
                         const TargetCycle& cycle) {
  const double range = f_values.maxCoeff() - s_min;
  return s_min - cycle.weight() * range;
}

Proposal next_point_rbf(const SampleSet& set, const RbfModel& model,
                        TargetCycle& cycle, const AuxSolver& solver) {
  AuxSolver surf_solver = solver;
  surf_solver.seed = mix_seed(solver.seed, 0x5f);
  const SolveResult surf =
      minimize([&model](const Vector& x) { return model.evaluate(x); },
               set.domain(), surf_solver);
  // The surface interpolates the data, so its domain minimum cannot exceed
  // the best sampled value; enforce that against solver slack.
  const double s_min = std::min(surf.value, set.min_value());
  const double f_star = choose_target_rbf(s_min, set.values(), cycle);

  // With a zero weight the target equals the surface minimum and the utility
  // vanishes exactly at the surface minimizer: evaluate there directly rather
  // than searching the flat basin. Fall through to the utility search when
  // that point collides with an existing sample.
  if (cycle.weight() == 0.0 &&
      set.min_distance_to(surf.point) > set.duplicate_tolerance()) {
    cycle.advance();
    return {surf.point, f_star, 0.0};
  }

  const MuEvaluator mu_eval(set, model.kernel());
  const double sign = model.kernel().tail_degree() == 0 ? -1.0 : 1.0;
  auto utility = [&](const Vector& y) {
    if (set.min_distance_to(y) <= set.duplicate_tolerance()) return kRejected;
    const double miss = model.evaluate(y) - f_star;
    const double g = sign * mu_eval.mu(y) * miss * miss;
    return g < 0.0 ? 0.0 : g;
  };
  double score = 0.0;
  Vector point = search_non_duplicate(utility, set, solver, &score);
  cycle.advance();
  return {std::move(point), f_star, score};
}

Proposal next_point_kriging(const SampleSet& set, const KrigingModel& model,
                            TargetCycle& cycle, const AuxSolver& solver) {
  const double f_min = set.min_value();
  std::optional<double> target;
  ScalarFn neg_acquisition;
  if (cycle.mode == Method::kriging_pi) {
    target = f_min - cycle.weight() * (set.max_value() - f_min);
    neg_acquisition = [&, t = *target](const Vector& x) {
      if (set.min_distance_to(x) <= set.duplicate_tolerance()) return kRejected;
      return -probability_of_improvement(model, x, t);
    };
  } else {
    neg_acquisition = [&](const Vector& x) {
      if (set.min_distance_to(x) <= set.duplicate_tolerance()) return kRejected;
      return -expected_improvement(model, x, f_min);
    };
  }
  double neg_score = 0.0;
  Vector point = search_non_duplicate(neg_acquisition, set, solver, &neg_score);
  cycle.advance();
  return {std::move(point), target, -neg_score};
}

RunResult run_optimization(const ObjectiveSpec& objective,
                           const RunConfig& config) {
  const BoxDomain& domain = objective.domain;
  const int d = domain.dim();
  const int design_size = 2 * (d + 1);
  const int budget = config.stop.max_evaluations;
  if (budget < design_size) {
    throw Error(ErrorCode::invalid_argument,
                "run: budget below the initial design size " +
                    std::to_string(design_size));
  }

  const BoxDomain unit = BoxDomain::unit_cube(d);
  SampleSet set(unit);
  RunResult result;

  auto evaluate = [&](const Vector& unit_point) {
    const Vector x = domain.from_unit(unit_point);
    const auto t0 = std::chrono::steady_clock::now();
    const double f = objective.evaluator(x);
    const auto t1 = std::chrono::steady_clock::now();
    if (!std::isfinite(f)) {
      throw Error(ErrorCode::non_finite_value, "run: objective not finite");
    }
    TraceRecord rec;
    rec.iteration = static_cast<int>(result.trace.size());
    rec.point = x;
    rec.value = f;
    rec.best_value =
        result.trace.empty() ? f : std::min(result.trace.back().best_value, f);
    rec.wall_time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    result.trace.push_back(std::move(rec));
    set = set.add(unit_point, f);
    return f;
  };

  const Matrix design =
      latin_hypercube(design_size, unit, mix_seed(config.seed, 0));
  for (int i = 0; i < design_size; ++i) {
    evaluate(design.row(i).transpose());
  }

  TargetCycle cycle{config.cycle_length, 0, config.method};
  std::optional<KrigingParams> kriging_params;
  result.status = RunStatus::budget_exhausted;

  auto stop_hit = [&]() {
    const double best = result.trace.back().best_value;
    if (config.stop.target_value && best <= *config.stop.target_value) {
      result.status = RunStatus::target_reached;
      return true;
    }
    if (config.stop.min_improvement && config.stop.window > 0 &&
        static_cast<int>(result.trace.size()) >=
            design_size + config.stop.window) {
      const auto& tr = result.trace;
      const double before =
          tr[tr.size() - 1 - config.stop.window].best_value;
      if (before - best < *config.stop.min_improvement) {
        result.status = RunStatus::stalled;
        return true;
      }
    }
    return false;
  };

  for (int iter = design_size; iter < budget; ++iter) {
    if (stop_hit()) break;
    AuxSolver inner;
    inner.n_starts = 10 * d;
    inner.seed = mix_seed(config.seed, 1000 + static_cast<std::uint64_t>(iter));
    Proposal proposal;
    try {
      if (config.method == Method::rbf) {
        // Clip values above the median before fitting: interpolating data
        // whose spread covers orders of magnitude makes the surface oscillate
        // (its minimum can fall far below every sample) and stalls the
        // search. Clipping preserves the ordering near the minimum.
        std::vector<double> sorted(set.values().begin(), set.values().end());
        std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                         sorted.end());
        const double median = sorted[sorted.size() / 2];
        SampleSet fit_set(unit);
        for (int i = 0; i < set.size(); ++i) {
          fit_set = fit_set.add(set.point(i),
                                std::min(set.values()[i], median));
        }
        // A clustered late-stage sample can make the kernel matrix
        // numerically singular; thin the fit set (best values kept) with an
        // escalating separation until the fit factors.
        double eps = 0.0;
        for (;;) {
          try {
            const RbfModel model = fit_rbf(fit_set, config.kernel);
            proposal = next_point_rbf(fit_set, model, cycle, inner);
            break;
          } catch (const Error& e) {
            if (e.code() != ErrorCode::singular_system || eps > 0.05) throw;
            eps = eps == 0.0 ? 1e-4 : 10.0 * eps;
            fit_set = thin_set(fit_set, eps);
          }
        }
      } else {
        const int n = set.size();
        const bool refit = !kriging_params || n <= 60 ||
                           (iter - design_size) % 5 == 0;
        KrigingModel model = [&] {
          if (refit) {
            KrigingModel m = fit_kriging(
                set, MleBounds{},
                default_mle_solver(d, mix_seed(config.seed, 2000 + iter)));
            kriging_params = m.params();
            return m;
          }
          return KrigingModel(*kriging_params, set);
        }();
        proposal = next_point_kriging(set, model, cycle, inner);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::no_new_point) {
        result.status = RunStatus::no_new_point;
        break;
      }
      throw;
    }
    double f;
    try {
      f = evaluate(proposal.point);
    } catch (const Error& e) {
      // A proposal cleared the (possibly thinned) fit set but collides with
      // a point removed from it.
      if (e.code() == ErrorCode::duplicate_point) {
        result.status = RunStatus::no_new_point;
        break;
      }
      throw;
    }
    TraceRecord& rec = result.trace.back();
    rec.target = proposal.target;
    rec.acquisition_score = proposal.score;
    GOP_LOG_DEBUG("iter " << iter << " f=" << f
                          << " best=" << rec.best_value);
  }
  if (result.status == RunStatus::budget_exhausted) stop_hit();
  GOP_LOG_INFO("run finished: " << run_status_name(result.status)
                                << " best=" << result.trace.back().best_value
                                << " evals=" << result.trace.size());
  return result;
}

}  // namespace gop
