#ifndef GOP_CORE_HPP
#define GOP_CORE_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gop {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class ErrorCode {
  invalid_argument,
  duplicate_point,
  singular_system,
  degenerate_data,
  no_new_point,
  non_finite_value,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Axis-aligned box [lower, upper] in R^d. Bounds are strict: lower[j] < upper[j].
class BoxDomain {
 public:
  BoxDomain(Vector lower, Vector upper);

  static BoxDomain unit_cube(int dim);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Vector range() const { return upper_ - lower_; }

  /// Euclidean length of the box diagonal.
  double diameter() const { return (upper_ - lower_).norm(); }

  bool contains(const Vector& x) const;
  Vector clamp(const Vector& x) const;

  /// Affine map into [0,1]^d and back.
  Vector to_unit(const Vector& x) const;
  Vector from_unit(const Vector& u) const;

 private:
  Vector lower_;
  Vector upper_;
};

/// Evaluated points with their objective values. Value-semantic: add() returns
/// a new set and leaves the receiver untouched. Points must stay pairwise
/// distinct; the duplicate tolerance is 1e-9 times the domain diameter.
class SampleSet {
 public:
  explicit SampleSet(BoxDomain domain);

  SampleSet add(const Vector& x, double fx) const;

  int size() const { return static_cast<int>(values_.size()); }
  int dim() const { return domain_.dim(); }
  bool empty() const { return size() == 0; }

  const Matrix& points() const { return points_; }  // n x d
  const Vector& values() const { return values_; }
  const BoxDomain& domain() const { return domain_; }

  Vector point(int i) const { return points_.row(i).transpose(); }

  double min_value() const;
  double max_value() const;

  double duplicate_tolerance() const { return 1e-9 * domain_.diameter(); }
  /// Euclidean distance from x to the nearest stored point (inf when empty).
  double min_distance_to(const Vector& x) const;

 private:
  BoxDomain domain_;
  Matrix points_;
  Vector values_;
};

/// Deterministic black-box objective together with its box domain.
struct ObjectiveSpec {
  std::function<double(const Vector&)> evaluator;
  BoxDomain domain;
  std::optional<double> known_minimum;  // testing only
};

struct TraceRecord {
  int iteration = 0;
  Vector point;
  double value = 0.0;
  double best_value = 0.0;
  std::optional<double> target;  // f* or T, absent for design points and EI
  double acquisition_score = 0.0;
  std::int64_t wall_time_ms = 0;  // objective evaluation time
};

/// Stratified design: one point per equal-width stratum in each coordinate,
/// strata assignment shuffled independently per coordinate.
Matrix latin_hypercube(int n, const BoxDomain& domain, std::uint64_t seed);

/// Max over a regular grid of resolution^d probe points of the distance to the
/// nearest sample. Coverage diagnostic; only meaningful for small d.
double fill_distance(const SampleSet& set, const BoxDomain& domain,
                     int grid_resolution);

/// splitmix64 step; used to derive independent sub-seeds from a run seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace gop

#endif  // GOP_CORE_HPP
