#ifndef GOP_KRIGING_HPP
#define GOP_KRIGING_HPP

#include "gop/core.hpp"
#include "gop/solver.hpp"

namespace gop {

/// Power-exponential correlation parameters, one (theta, p) pair per
/// coordinate: corr(u, v) = exp(-sum_j theta_j |u_j - v_j|^{p_j}).
struct KrigingParams {
  Vector theta;  // >= 0
  Vector power;  // in [1, 2]
};

double correlation(const KrigingParams& params, const Vector& u,
                   const Vector& v);

/// BLUP with constant trend: mean, profiled variance, and the Cholesky factor
/// of the jittered correlation matrix, everything needed to predict.
class KrigingModel {
 public:
  KrigingModel(KrigingParams params, const SampleSet& set);

  const KrigingParams& params() const { return params_; }
  const Matrix& centers() const { return centers_; }
  int size() const { return static_cast<int>(centers_.rows()); }
  double mu_hat() const { return mu_hat_; }
  double sigma2_hat() const { return sigma2_hat_; }
  double jitter() const { return jitter_; }
  const Vector& weights() const { return weights_; }

  double predict_mean(const Vector& x) const;
  double predict_variance(const Vector& x) const;

 private:
  Vector corr_vector(const Vector& x) const;

  KrigingParams params_;
  Matrix centers_;
  double mu_hat_ = 0.0;
  double mu_pred_ = 0.0;  // GLS mean of the unregularized system (predictor)
  double sigma2_hat_ = 0.0;
  double jitter_ = 0.0;
  Eigen::LLT<Matrix> chol_;
  Vector weights_;      // R^{-1} (f - mu 1)
  Vector rinv_ones_;    // R^{-1} 1
  double ones_rinv_ones_ = 0.0;
};

/// Profiled log-likelihood -(n/2) ln sigma2_hat - (1/2) ln det R, with
/// mu_hat and sigma2_hat substituted in closed form.
/// Throws DegenerateData on (numerically) constant values.
double concentrated_log_likelihood(const SampleSet& set,
                                   const KrigingParams& params);

/// MLE search box over (log10 theta_1..d, p_1..d).
struct MleBounds {
  double log10_theta_min = -2.0;
  double log10_theta_max = 3.0;
  double power_min = 1.0;
  double power_max = 2.0;
};

/// Maximize the concentrated log-likelihood over the bounds with the given
/// multistart solver, then build the model at the optimum. Deterministic for
/// a fixed solver seed; ties break to the lowest start index.
KrigingModel fit_kriging(const SampleSet& set, const MleBounds& bounds,
                         const AuxSolver& solver);

/// Solver defaults for the MLE search: 10 * (2d) starts.
AuxSolver default_mle_solver(int dim, std::uint64_t seed);

double normal_cdf(double z);
double normal_pdf(double z);

/// Phi((T - yhat) / s); degenerates to an indicator when s = 0.
double probability_of_improvement(const KrigingModel& model, const Vector& x,
                                  double target);

/// One-sided E[max(f_min - Y, 0)] under Y ~ N(yhat, s^2).
double expected_improvement(const KrigingModel& model, const Vector& x,
                            double f_min);

/// Closed forms on (yhat, s) directly; the model operations above delegate
/// here.
double pi_value(double yhat, double s, double target);
double ei_value(double yhat, double s, double f_min);

}  // namespace gop

#endif  // GOP_KRIGING_HPP
