#ifndef GOP_SOLVER_HPP
#define GOP_SOLVER_HPP

#include "gop/core.hpp"

namespace gop {

/// Multistart derivative-free box-constrained optimizer: Latin-hypercube
/// starts, each refined by coordinate pattern search with step halving.
/// Deterministic for a fixed seed; ties between starts go to the lowest
/// start index.
struct AuxSolver {
  int n_starts = 10;
  int max_local_iters = 200;
  double step_tolerance = 1e-6;
  std::uint64_t seed = 0;
};

struct SolveResult {
  Vector point;
  double value = 0.0;
};

using ScalarFn = std::function<double(const Vector&)>;

SolveResult minimize(const ScalarFn& fn, const BoxDomain& domain,
                     const AuxSolver& solver);

/// minimize(-fn); the reported value is un-negated.
SolveResult maximize(const ScalarFn& fn, const BoxDomain& domain,
                     const AuxSolver& solver);

}  // namespace gop

#endif  // GOP_SOLVER_HPP
