#include "gop/kriging.hpp"

#include <cmath>

namespace gop {

namespace {

struct CorrFactor {
  Eigen::LLT<Matrix> chol;
  double jitter = 0.0;
};

Matrix correlation_matrix(const Matrix& points, const KrigingParams& params) {
  const int n = static_cast<int>(points.rows());
  Matrix r = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double v = correlation(params, points.row(i).transpose(),
                                   points.row(j).transpose());
      r(i, j) = v;
      r(j, i) = v;
    }
  }
  return r;
}

/// Factor R + eta*I, escalating eta from 1e-10 by 10x up to 1e-6 until the
/// Cholesky succeeds.
CorrFactor factor_correlation(const Matrix& r, const KrigingParams& params) {
  const int n = static_cast<int>(r.rows());
  for (double eta = 1e-10; eta <= 1e-6 * 1.0001; eta *= 10.0) {
    Matrix rj = r + eta * Matrix::Identity(n, n);
    Eigen::LLT<Matrix> chol(rj);
    if (chol.info() == Eigen::Success) return {std::move(chol), eta};
  }
  throw Error(ErrorCode::singular_system,
              "kriging: correlation matrix not positive definite at max jitter");
}

/// Solve R x = rhs against the unjittered matrix with iterative refinement,
/// keeping the best iterate. This drives the node interpolation error to the
/// roundoff floor instead of jitter * |weights|.
Vector refined_solve(const Matrix& r, const Eigen::FullPivLU<Matrix>& lu,
                     const Vector& rhs) {
  Vector x = lu.solve(rhs);
  const double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
  Vector best = x;
  double best_residual = (rhs - r * x).cwiseAbs().maxCoeff();
  for (int step = 0; step < 12; ++step) {
    if (best_residual <= 1e-13 * scale) break;
    const Vector residual = rhs - r * x;
    x += lu.solve(residual);
    const double cur = (rhs - r * x).cwiseAbs().maxCoeff();
    if (cur < best_residual) {
      best = x;
      best_residual = cur;
    } else {
      break;  // roundoff floor reached
    }
  }
  return best;
}

struct ProfiledStats {
  CorrFactor factor;
  double mu_hat = 0.0;
  double mu_pred = 0.0;  // GLS mean from the unjittered solve (predictor)
  double sigma2_hat = 0.0;
  Vector weights;     // R^{-1}(f - mu_pred 1)
  Vector rinv_ones;   // R^{-1} 1
  double ones_rinv_ones = 0.0;
};

ProfiledStats profile(const SampleSet& set, const KrigingParams& params,
                      bool need_weights) {
  const int n = set.size();
  if (n < 2) {
    throw Error(ErrorCode::invalid_argument, "kriging: need at least 2 samples");
  }
  if (params.theta.size() != set.dim() || params.power.size() != set.dim()) {
    throw Error(ErrorCode::invalid_argument, "kriging: parameter dimension");
  }
  for (int j = 0; j < set.dim(); ++j) {
    if (params.theta[j] < 0.0 || params.power[j] < 1.0 ||
        params.power[j] > 2.0) {
      throw Error(ErrorCode::invalid_argument,
                  "kriging: theta must be >= 0 and p in [1, 2]");
    }
  }
  const Matrix r = correlation_matrix(set.points(), params);
  ProfiledStats st{factor_correlation(r, params)};
  const Vector ones = Vector::Ones(n);
  const Vector& f = set.values();
  // Profiled statistics come from the jittered factor: on a numerically
  // singular correlation matrix the regularized quadratic form is the stable
  // one, and the likelihood surface stays smooth for the MLE search.
  st.rinv_ones = st.factor.chol.solve(ones);
  st.ones_rinv_ones = ones.dot(st.rinv_ones);
  st.mu_hat = f.dot(st.rinv_ones) / st.ones_rinv_ones;
  const Vector residual = f - st.mu_hat * ones;
  st.sigma2_hat = residual.dot(st.factor.chol.solve(residual)) / n;
  st.mu_pred = st.mu_hat;
  if (need_weights) {
    // The mean predictor must interpolate the data and reduce to the BLUP of
    // the unregularized model, so its mean and weights are solved against the
    // unjittered matrix with refinement; a plain jittered solve leaves node
    // errors of order jitter * |weights| and shifts the fitted mean.
    const Eigen::FullPivLU<Matrix> lu(r);
    const Vector rinv_ones_lu = refined_solve(r, lu, ones);
    st.mu_pred = f.dot(rinv_ones_lu) / ones.dot(rinv_ones_lu);
    st.weights = refined_solve(r, lu, f - st.mu_pred * ones);
  }
  if (!(st.sigma2_hat >= 1e-14 * (1.0 + f.squaredNorm()))) {
    // Distinguish genuinely constant data (profiled variance truly zero)
    // from a correlation matrix too singular to evaluate the quadratic form.
    const double range = f.maxCoeff() - f.minCoeff();
    if (range <= 1e-10 * (1.0 + f.cwiseAbs().maxCoeff())) {
      throw Error(ErrorCode::degenerate_data,
                  "kriging: constant data, likelihood unbounded");
    }
    throw Error(ErrorCode::singular_system,
                "kriging: correlation matrix numerically singular for these "
                "parameters");
  }
  return st;
}

double log_det_from_chol(const Eigen::LLT<Matrix>& chol) {
  return 2.0 * chol.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace

double correlation(const KrigingParams& params, const Vector& u,
                   const Vector& v) {
  double e = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    e += params.theta[j] * std::pow(std::abs(u[j] - v[j]), params.power[j]);
  }
  return std::exp(-e);
}

KrigingModel::KrigingModel(KrigingParams params, const SampleSet& set)
    : params_(std::move(params)), centers_(set.points()) {
  ProfiledStats st = profile(set, params_, /*need_weights=*/true);
  mu_hat_ = st.mu_hat;
  mu_pred_ = st.mu_pred;
  sigma2_hat_ = st.sigma2_hat;
  jitter_ = st.factor.jitter;
  chol_ = std::move(st.factor.chol);
  weights_ = std::move(st.weights);
  rinv_ones_ = std::move(st.rinv_ones);
  ones_rinv_ones_ = st.ones_rinv_ones;
}

Vector KrigingModel::corr_vector(const Vector& x) const {
  Vector r(size());
  for (int i = 0; i < size(); ++i) {
    r[i] = correlation(params_, x, centers_.row(i).transpose());
  }
  return r;
}

double KrigingModel::predict_mean(const Vector& x) const {
  return mu_pred_ + corr_vector(x).dot(weights_);
}

double KrigingModel::predict_variance(const Vector& x) const {
  const Vector r = corr_vector(x);
  const Vector rinv_r = chol_.solve(r);
  const double mean_term = 1.0 - rinv_ones_.dot(r);
  const double v = sigma2_hat_ * (1.0 - r.dot(rinv_r) +
                                  mean_term * mean_term / ones_rinv_ones_);
  return v < 0.0 ? 0.0 : v;
}

double concentrated_log_likelihood(const SampleSet& set,
                                   const KrigingParams& params) {
  ProfiledStats st = profile(set, params, /*need_weights=*/false);
  const double n = set.size();
  return -(n / 2.0) * std::log(st.sigma2_hat) -
         0.5 * log_det_from_chol(st.factor.chol);
}

AuxSolver default_mle_solver(int dim, std::uint64_t seed) {
  AuxSolver s;
  s.n_starts = 10 * (2 * dim);
  // The likelihood surface is smooth in (log10 theta, p); a coarser local
  // tolerance keeps the per-iteration refit affordable.
  s.max_local_iters = 60;
  s.step_tolerance = 1e-3;
  s.seed = seed;
  return s;
}

KrigingModel fit_kriging(const SampleSet& set, const MleBounds& bounds,
                         const AuxSolver& solver) {
  const int d = set.dim();
  auto params_at = [d](const Vector& z) {
    KrigingParams p;
    p.theta = Vector(d);
    p.power = Vector(d);
    for (int j = 0; j < d; ++j) {
      p.theta[j] = std::pow(10.0, z[j]);
      p.power[j] = z[d + j];
    }
    return p;
  };

  const bool collapsed = bounds.log10_theta_min == bounds.log10_theta_max &&
                         bounds.power_min == bounds.power_max;
  if (collapsed) {
    Vector z(2 * d);
    z.head(d).setConstant(bounds.log10_theta_min);
    z.tail(d).setConstant(bounds.power_min);
    return KrigingModel(params_at(z), set);
  }
  if (!(bounds.log10_theta_min < bounds.log10_theta_max) ||
      !(bounds.power_min < bounds.power_max)) {
    throw Error(ErrorCode::invalid_argument, "fit_kriging: bad bounds");
  }

  // Fail fast on constant data; any parameter choice is degenerate then.
  try {
    Vector z(2 * d);
    z.head(d).setZero();
    z.tail(d).setConstant(2.0);
    concentrated_log_likelihood(set, params_at(z));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_system) throw;
  }

  Vector lo(2 * d), hi(2 * d);
  lo.head(d).setConstant(bounds.log10_theta_min);
  hi.head(d).setConstant(bounds.log10_theta_max);
  lo.tail(d).setConstant(bounds.power_min);
  hi.tail(d).setConstant(bounds.power_max);
  const BoxDomain param_box(lo, hi);

  auto neg_cll = [&](const Vector& z) {
    try {
      return -concentrated_log_likelihood(set, params_at(z));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::singular_system) return 1e300;
      throw;
    }
  };
  const SolveResult best = minimize(neg_cll, param_box, solver);
  return KrigingModel(params_at(best.point), set);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

double pi_value(double yhat, double s, double target) {
  if (s <= 0.0) return yhat <= target ? 1.0 : 0.0;
  return normal_cdf((target - yhat) / s);
}

double ei_value(double yhat, double s, double f_min) {
  if (s <= 0.0) return std::max(f_min - yhat, 0.0);
  const double z = (f_min - yhat) / s;
  const double ei = (f_min - yhat) * normal_cdf(z) + s * normal_pdf(z);
  return ei < 0.0 ? 0.0 : ei;
}

double probability_of_improvement(const KrigingModel& model, const Vector& x,
                                  double target) {
  return pi_value(model.predict_mean(x), std::sqrt(model.predict_variance(x)),
                  target);
}

double expected_improvement(const KrigingModel& model, const Vector& x,
                            double f_min) {
  return ei_value(model.predict_mean(x), std::sqrt(model.predict_variance(x)),
                  f_min);
}

}  // namespace gop
