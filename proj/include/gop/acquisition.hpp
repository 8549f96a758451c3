#ifndef GOP_ACQUISITION_HPP
#define GOP_ACQUISITION_HPP

#include "gop/core.hpp"
#include "gop/kriging.hpp"
#include "gop/rbf.hpp"
#include "gop/solver.hpp"

#include <vector>

namespace gop {

enum class Method { rbf, kriging_pi, kriging_ei };

Method parse_method(const std::string& name);
std::string method_name(Method method);

/// Target schedule shared by the RBF f* rule and the Kriging-PI T rule:
/// weight w_k = (1 - k/N)^2, k cycling through 0..N. k = 0 pushes the target
/// far below the current minimum (exploration), k = N sits exactly at it
/// (pure surface-minimum search).
struct TargetCycle {
  int length = 5;  // N
  int index = 0;   // k in [0, N]
  Method mode = Method::rbf;

  double weight() const {
    const double t = 1.0 - static_cast<double>(index) / length;
    return t * t;
  }
  void advance() { index = (index + 1) % (length + 1); }
};

struct StopRule {
  int max_evaluations = 0;
  std::optional<double> target_value;
  std::optional<double> min_improvement;
  int window = 0;
};

/// f* = s_min - w_k (max f - s_min); always <= s_min.
double choose_target_rbf(double s_min, const Vector& f_values,
                         const TargetCycle& cycle);

struct Proposal {
  Vector point;
  std::optional<double> target;  // f* or T; absent in EI mode
  double score = 0.0;
};

/// One Gutmann step: locate the surface minimum, pick the cycle's target f*,
/// and minimize the utility g(y) over the domain. The cycle advances only on
/// success. Throws NoNewPoint when every candidate collides with an existing
/// sample after 3 solver restarts.
Proposal next_point_rbf(const SampleSet& set, const RbfModel& model,
                        TargetCycle& cycle, const AuxSolver& solver);

/// PI mode: T = f_min - w_k (max f - f_min), maximize PI. EI mode: maximize
/// expected improvement against f_min, no target.
Proposal next_point_kriging(const SampleSet& set, const KrigingModel& model,
                            TargetCycle& cycle, const AuxSolver& solver);

struct RunConfig {
  Method method = Method::rbf;
  KernelKind kernel{KernelType::cubic};
  StopRule stop;
  std::uint64_t seed = 0;
  int cycle_length = 5;
};

enum class RunStatus { budget_exhausted, target_reached, stalled, no_new_point };

std::string run_status_name(RunStatus status);

struct RunResult {
  std::vector<TraceRecord> trace;
  RunStatus status = RunStatus::budget_exhausted;
};

/// Outer loop: Latin-hypercube design of size 2(d+1), then fit / propose /
/// evaluate until a stop criterion fires. Surrogates see coordinates rescaled
/// to the unit cube; the trace reports original units.
RunResult run_optimization(const ObjectiveSpec& objective,
                           const RunConfig& config);

}  // namespace gop

#endif  // GOP_ACQUISITION_HPP
