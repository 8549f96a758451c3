#include "gop/solver.hpp"

#include <cmath>

namespace gop {

namespace {

double checked_eval(const ScalarFn& fn, const Vector& x) {
  const double v = fn(x);
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::non_finite_value,
                "aux solver: objective returned a non-finite value");
  }
  return v;
}

/// Compass search from x0: probe +/- step along each axis, accept the first
/// improvement, halve all steps after a sweep with no improvement.
SolveResult pattern_search(const ScalarFn& fn, const BoxDomain& domain,
                           Vector x0, double f0, const AuxSolver& solver) {
  const int d = domain.dim();
  Vector step = 0.25 * domain.range();
  Vector x = std::move(x0);
  double fx = f0;
  for (int iter = 0; iter < solver.max_local_iters; ++iter) {
    if (step.maxCoeff() < solver.step_tolerance) break;
    bool improved = false;
    for (int j = 0; j < d; ++j) {
      for (double sign : {1.0, -1.0}) {
        Vector y = x;
        y[j] += sign * step[j];
        y = domain.clamp(y);
        if (y[j] == x[j]) continue;
        const double fy = checked_eval(fn, y);
        if (fy < fx) {
          x = y;
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {x, fx};
}

}  // namespace

SolveResult minimize(const ScalarFn& fn, const BoxDomain& domain,
                     const AuxSolver& solver) {
  if (solver.n_starts < 1 || solver.step_tolerance <= 0.0) {
    throw Error(ErrorCode::invalid_argument, "aux solver: bad configuration");
  }
  const Matrix starts = latin_hypercube(solver.n_starts, domain, solver.seed);
  SolveResult best;
  bool have_best = false;
  for (int i = 0; i < solver.n_starts; ++i) {
    const Vector x0 = starts.row(i).transpose();
    const double f0 = checked_eval(fn, x0);
    const SolveResult local = pattern_search(fn, domain, x0, f0, solver);
    if (!have_best || local.value < best.value) {
      best = local;
      have_best = true;
    }
  }
  return best;
}

SolveResult maximize(const ScalarFn& fn, const BoxDomain& domain,
                     const AuxSolver& solver) {
  SolveResult r = minimize([&fn](const Vector& x) { return -fn(x); }, domain,
                           solver);
  r.value = -r.value;
  return r;
}

}  // namespace gop
