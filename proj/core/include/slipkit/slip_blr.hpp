#pragma once

#include <Eigen/Dense>
#include <string>

#include "slipkit/kinematics.hpp"

namespace slipkit {

/// The three body dimensions slip is learned in, each with its own basis.
enum class SlipDimension { Longitudinal, Lateral, Angular };

/// Feature count per dimension: 1 (f_x), 1 (psi), 3 ([psi, f_x, f_omega]).
int feature_arity(SlipDimension dim);

/// Dynamics-aware slip regressors built from the commanded body velocity:
///   Longitudinal -> [f_x]            (rolling resistance)
///   Lateral      -> [f_x * f_omega]  (centrifugal term psi)
///   Angular      -> [psi, f_x, f_omega]
/// There is no intercept term.
Eigen::VectorXd slip_features(SlipDimension dim, const BodyVelocity& f);

/// Normal-Inverse-Gamma prior over (weights, noise variance).
struct NIGPrior {
  Eigen::VectorXd weights;  // gamma_0
  Eigen::MatrixXd scatter;  // K_0
  double shape = 0.0;       // a_0
  double scale = 0.0;       // b_0
};

/// The uninformative prior: gamma_0 = 0, a_0 = b_0 = 0, K_0 = phi (X^T X)^-1
/// for a design matrix X and any positive phi. Large phi makes the posterior
/// mean approach the least-squares estimate while keeping K_0 finite.
/// Throws InsufficientExcitationError when X^T X is singular.
NIGPrior uninformative_prior(const Eigen::MatrixXd& design, double phi);

inline constexpr double kDefaultPhi = 1e6;

/// Normal-Inverse-Gamma posterior over slip weights and noise variance.
struct NIGPosterior {
  Eigen::VectorXd weights;  // gamma
  Eigen::MatrixXd scatter;  // K, symmetric positive-definite
  double shape = 0.0;       // a = a_0 + n/2
  double scale = 0.0;       // b
  long obs_count = 0;       // n

  bool trained() const { return shape > 0.0; }

  /// Posterior mean of the noise variance, b / (a - 1). Defined for a > 1.
  double noise_variance_mean() const { return scale / (shape - 1.0); }

  /// Marginal posterior standard deviation of weight i, sqrt(b/(a-1) K_ii).
  double weight_stddev(int i) const;
};

/// Conjugate batch update:
///   K = (K_0^-1 + X^T X)^-1
///   gamma = K (K_0^-1 gamma_0 + X^T g)
///   a = a_0 + n/2
///   b = b_0 + (gamma_0^T K_0^-1 gamma_0 + g^T g - gamma^T K^-1 gamma) / 2
/// Throws InsufficientExcitationError when K_0^-1 + X^T X is numerically
/// singular.
NIGPosterior blr_fit(const NIGPrior& prior, const Eigen::MatrixXd& X, const Eigen::VectorXd& g);

/// Sequential form of blr_fit treating the current posterior as the prior.
/// Equals the batch fit on the concatenated data. An empty batch returns the
/// posterior unchanged.
NIGPosterior blr_update(const NIGPosterior& posterior, const Eigen::MatrixXd& X,
                        const Eigen::VectorXd& g);

/// Student-t predictive distribution over m test rows:
///   mean = X gamma, covariance = (b/a)(I_m + X K X^T), dof = 2a.
/// `covariance` is the t scale matrix of that expression; the moment
/// covariance is covariance * dof / (dof - 2) when dof > 2.
struct StudentTPrediction {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  double dof = 0.0;
};

/// Throws UntrainedModelError when the posterior has seen no data (a = 0).
StudentTPrediction blr_predict(const NIGPosterior& posterior, const Eigen::MatrixXd& X_test);

/// Per-dimension slip posteriors plus the basis tag they were trained with.
struct SlipModel {
  NIGPosterior longitudinal;
  NIGPosterior lateral;
  NIGPosterior angular;
  std::string basis = kSlipBasisTag;
  double phi = kDefaultPhi;

  static constexpr const char* kSlipBasisTag = "dynamics-aware-v1";

  bool trained() const {
    return longitudinal.trained() && lateral.trained() && angular.trained();
  }
};

/// Posterior-mean slip for a commanded body velocity.
SlipVelocity predict_slip(const SlipModel& model, const BodyVelocity& f);

/// Slip-compensated body velocity: the ideal differential-drive velocity for
/// the estimated wheel speeds minus the posterior-mean slip.
/// Throws UntrainedModelError when any dimension is untrained.
BodyVelocity predict_body_velocity(const SlipModel& model, const RobotGeometry& geom,
                                   const WheelSpeeds& wheels_hat);

}  // namespace slipkit
