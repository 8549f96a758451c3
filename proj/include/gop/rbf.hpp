#ifndef GOP_RBF_HPP
#define GOP_RBF_HPP

#include "gop/core.hpp"

namespace gop {

enum class KernelType {
  linear,            // phi(r) = r
  cubic,             // phi(r) = r^3
  thin_plate_spline, // phi(r) = r^2 log r, 0 at r = 0
  multiquadric,      // phi(r) = sqrt(r^2 + gamma^2)
  gaussian,          // phi(r) = exp(-gamma r^2)
};

/// Kernel plus polynomial-tail degree. The default tail degree is the minimal
/// one guaranteeing a nonsingular augmented system (linear/multiquadric: 0,
/// cubic/thin-plate: 1, gaussian: -1, no tail); lower degrees are rejected,
/// higher ones up to 1 are allowed (a gaussian kernel with a constant tail is
/// a valid configuration).
class KernelKind {
 public:
  explicit KernelKind(KernelType type, double gamma = 1.0);

  static int required_tail_degree(KernelType type);

  KernelKind with_tail_degree(int degree) const;

  KernelType type() const { return type_; }
  double gamma() const { return gamma_; }
  int tail_degree() const { return tail_degree_; }
  /// Number of monomials of degree <= tail_degree in dimension d.
  int tail_size(int dim) const;

  std::string name() const;

 private:
  KernelType type_;
  double gamma_;
  int tail_degree_;
};

KernelKind parse_kernel(const std::string& name, double gamma);

double phi(const KernelKind& kernel, double r);

/// Fitted interpolant s(x) = sum_i lambda_i phi(|x - x_i|) + p(x).
class RbfModel {
 public:
  RbfModel(KernelKind kernel, Matrix centers, Vector weights,
           Vector tail_coeffs);

  const KernelKind& kernel() const { return kernel_; }
  const Matrix& centers() const { return centers_; }
  const Vector& weights() const { return weights_; }
  const Vector& tail_coeffs() const { return tail_coeffs_; }
  int size() const { return static_cast<int>(weights_.size()); }
  int dim() const { return static_cast<int>(centers_.cols()); }

  double evaluate(const Vector& x) const;

 private:
  KernelKind kernel_;
  Matrix centers_;
  Vector weights_;
  Vector tail_coeffs_;
};

/// Solve the augmented system [Phi P; P^T 0] [lambda; c] = [f; 0].
/// Throws SingularSystem when the factorization pivot ratio falls below 1e-12
/// (coalescing points or a non-unisolvent tail).
RbfModel fit_rbf(const SampleSet& set, const KernelKind& kernel);

double eval_rbf(const RbfModel& model, const Vector& x);

/// Native-space seminorm (-1)^(m+1) lambda^T Phi lambda, m the tail degree
/// (m = -1 counts as factor +1). Small negative values from roundoff are
/// clamped to 0.
double bumpiness(const RbfModel& model);

/// Weight the augmented interpolant of {(x_i, 0)} u {(y, 1)} assigns to the
/// new center y. Reuses one factorization of the base system, so building it
/// once per sample set amortizes over many candidate points.
class MuEvaluator {
 public:
  MuEvaluator(const SampleSet& set, const KernelKind& kernel);
  double mu(const Vector& y) const;  // throws DuplicatePoint near a sample

 private:
  const SampleSet& set_;
  KernelKind kernel_;
  int q_;
  Eigen::FullPivLU<Matrix> lu_;
  double phi0_;
};

double mu_coefficient(const SampleSet& set, const KernelKind& kernel,
                      const Vector& y);

/// Gutmann utility g(y) = (-1)^(m+1) mu_n(y) (s_n(y) - f_star)^2: the exact
/// increase in bumpiness incurred by forcing the interpolant through
/// (y, f_star).
double gutmann_utility(const SampleSet& set, const RbfModel& model,
                       const Vector& y, double f_star);

}  // namespace gop

#endif  // GOP_RBF_HPP
