#include "gop/rbf.hpp"

#include <cmath>

namespace gop {

namespace {

/// Monomial basis values at x: {1} for degree 0, {1, x_1..x_d} for degree 1.
Vector monomials(const Vector& x, int degree) {
  if (degree < 0) return Vector(0);
  if (degree == 0) return Vector::Ones(1);
  Vector out(1 + x.size());
  out[0] = 1.0;
  out.tail(x.size()) = x;
  return out;
}

double sign_factor(int tail_degree) {
  return tail_degree == 0 ? -1.0 : 1.0;  // (-1)^(m+1), m = -1 counts as +1
}

/// [Phi P; P^T 0] for the given centers.
Matrix augmented_matrix(const Matrix& points, const KernelKind& kernel) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  const int q = kernel.tail_size(d);
  Matrix a = Matrix::Zero(n + q, n + q);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = phi(kernel, (points.row(i) - points.row(j)).norm());
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  for (int i = 0; i < n; ++i) {
    const Vector p = monomials(points.row(i).transpose(), kernel.tail_degree());
    a.block(i, n, 1, q) = p.transpose();
    a.block(n, i, q, 1) = p;
  }
  return a;
}

void check_pivots(const Eigen::FullPivLU<Matrix>& lu) {
  const Vector diag = lu.matrixLU().diagonal().cwiseAbs();
  if (diag.size() == 0) return;
  if (diag.minCoeff() < 1e-12 * diag.maxCoeff()) {
    throw Error(ErrorCode::singular_system,
                "rbf: augmented system is numerically singular");
  }
}

}  // namespace

KernelKind::KernelKind(KernelType type, double gamma)
    : type_(type), gamma_(gamma), tail_degree_(required_tail_degree(type)) {
  if ((type == KernelType::multiquadric || type == KernelType::gaussian) &&
      !(gamma > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "kernel: gamma must be positive");
  }
}

int KernelKind::required_tail_degree(KernelType type) {
  switch (type) {
    case KernelType::linear: return 0;
    case KernelType::cubic: return 1;
    case KernelType::thin_plate_spline: return 1;
    case KernelType::multiquadric: return 0;
    case KernelType::gaussian: return -1;
  }
  throw Error(ErrorCode::invalid_argument, "kernel: unknown type");
}

KernelKind KernelKind::with_tail_degree(int degree) const {
  if (degree < required_tail_degree(type_) || degree > 1) {
    throw Error(ErrorCode::invalid_argument,
                "kernel: tail degree below the kernel's requirement");
  }
  KernelKind out(*this);
  out.tail_degree_ = degree;
  return out;
}

int KernelKind::tail_size(int dim) const {
  if (tail_degree_ < 0) return 0;
  return tail_degree_ == 0 ? 1 : 1 + dim;
}

std::string KernelKind::name() const {
  switch (type_) {
    case KernelType::linear: return "linear";
    case KernelType::cubic: return "cubic";
    case KernelType::thin_plate_spline: return "thin_plate_spline";
    case KernelType::multiquadric: return "multiquadric";
    case KernelType::gaussian: return "gaussian";
  }
  return "?";
}

KernelKind parse_kernel(const std::string& name, double gamma) {
  if (name == "linear") return KernelKind(KernelType::linear);
  if (name == "cubic") return KernelKind(KernelType::cubic);
  if (name == "thin_plate_spline" || name == "tps") {
    return KernelKind(KernelType::thin_plate_spline);
  }
  if (name == "multiquadric") return KernelKind(KernelType::multiquadric, gamma);
  if (name == "gaussian") return KernelKind(KernelType::gaussian, gamma);
  throw Error(ErrorCode::invalid_argument, "unknown kernel: " + name);
}

double phi(const KernelKind& kernel, double r) {
  if (r < 0.0) {
    throw Error(ErrorCode::invalid_argument, "phi: negative radius");
  }
  switch (kernel.type()) {
    case KernelType::linear: return r;
    case KernelType::cubic: return r * r * r;
    case KernelType::thin_plate_spline:
      return r > 0.0 ? r * r * std::log(r) : 0.0;
    case KernelType::multiquadric:
      return std::sqrt(r * r + kernel.gamma() * kernel.gamma());
    case KernelType::gaussian: return std::exp(-kernel.gamma() * r * r);
  }
  throw Error(ErrorCode::invalid_argument, "phi: unknown kernel");
}

RbfModel::RbfModel(KernelKind kernel, Matrix centers, Vector weights,
                   Vector tail_coeffs)
    : kernel_(std::move(kernel)),
      centers_(std::move(centers)),
      weights_(std::move(weights)),
      tail_coeffs_(std::move(tail_coeffs)) {}

double RbfModel::evaluate(const Vector& x) const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) {
    s += weights_[i] * phi(kernel_, (centers_.row(i).transpose() - x).norm());
  }
  if (tail_coeffs_.size() > 0) {
    s += tail_coeffs_.dot(monomials(x, kernel_.tail_degree()));
  }
  return s;
}

RbfModel fit_rbf(const SampleSet& set, const KernelKind& kernel) {
  const int n = set.size();
  if (n < 1) throw Error(ErrorCode::invalid_argument, "fit_rbf: empty set");
  const int q = kernel.tail_size(set.dim());
  const Matrix a = augmented_matrix(set.points(), kernel);
  Eigen::FullPivLU<Matrix> lu(a);
  check_pivots(lu);
  Vector rhs = Vector::Zero(n + q);
  rhs.head(n) = set.values();
  Vector sol = lu.solve(rhs);
  // Iterative refinement: the kernel matrix can be badly conditioned even for
  // well-separated points, and the interpolation invariant is checked against
  // the residual this loop drives down. Keep the best iterate in case a sweep
  // stops helping at the roundoff floor.
  const double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
  Vector best = sol;
  double best_residual = (rhs - a * sol).cwiseAbs().maxCoeff();
  for (int step = 0; step < 12; ++step) {
    if (best_residual <= 1e-14 * scale) break;
    const Vector residual = rhs - a * sol;
    sol += lu.solve(residual);
    const double cur = (rhs - a * sol).cwiseAbs().maxCoeff();
    if (cur < best_residual) {
      best = sol;
      best_residual = cur;
    } else {
      break;
    }
  }
  sol = best;
  return RbfModel(kernel, set.points(), sol.head(n), sol.tail(q));
}

double eval_rbf(const RbfModel& model, const Vector& x) {
  return model.evaluate(x);
}

double bumpiness(const RbfModel& model) {
  const int n = model.size();
  const Matrix& c = model.centers();
  double quad = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      quad += model.weights()[i] * model.weights()[j] *
              phi(model.kernel(), (c.row(i) - c.row(j)).norm());
    }
  }
  double b = sign_factor(model.kernel().tail_degree()) * quad;
  if (b < 0.0 && b > -1e-10) b = 0.0;
  return b;
}

MuEvaluator::MuEvaluator(const SampleSet& set, const KernelKind& kernel)
    : set_(set),
      kernel_(kernel),
      q_(kernel.tail_size(set.dim())),
      lu_(augmented_matrix(set.points(), kernel)),
      phi0_(phi(kernel, 0.0)) {
  if (set.size() + q_ > 0) check_pivots(lu_);
}

double MuEvaluator::mu(const Vector& y) const {
  if (set_.min_distance_to(y) <= set_.duplicate_tolerance()) {
    throw Error(ErrorCode::duplicate_point,
                "mu: candidate coincides with an existing sample");
  }
  const int n = set_.size();
  // Schur complement of the base system inside the extended one:
  // mu = 1 / (phi(0) - b^T A^{-1} b), b = [phi(|y - x_i|); monomials(y)].
  double schur = phi0_;
  if (n + q_ > 0) {
    Vector b(n + q_);
    for (int i = 0; i < n; ++i) {
      b[i] = phi(kernel_, (set_.points().row(i).transpose() - y).norm());
    }
    if (q_ > 0) b.tail(q_) = monomials(y, kernel_.tail_degree());
    schur -= b.dot(lu_.solve(b));
  }
  if (schur == 0.0 || !std::isfinite(schur)) {
    throw Error(ErrorCode::singular_system, "mu: extended system is singular");
  }
  return 1.0 / schur;
}

double mu_coefficient(const SampleSet& set, const KernelKind& kernel,
                      const Vector& y) {
  return MuEvaluator(set, kernel).mu(y);
}

double gutmann_utility(const SampleSet& set, const RbfModel& model,
                       const Vector& y, double f_star) {
  const double m = mu_coefficient(set, model.kernel(), y);
  const double miss = model.evaluate(y) - f_star;
  const double g = sign_factor(model.kernel().tail_degree()) * m * miss * miss;
  return g < 0.0 ? 0.0 : g;
}

}  // namespace gop
