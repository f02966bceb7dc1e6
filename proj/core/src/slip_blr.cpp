#include "slipkit/slip_blr.hpp"

#include <cmath>
#include <stdexcept>

#include "slipkit/errors.hpp"

namespace slipkit {

int feature_arity(SlipDimension dim) {
  switch (dim) {
    case SlipDimension::Longitudinal:
    case SlipDimension::Lateral:
      return 1;
    case SlipDimension::Angular:
      return 3;
  }
  throw std::invalid_argument("feature_arity: unknown dimension");
}

Eigen::VectorXd slip_features(SlipDimension dim, const BodyVelocity& f) {
  const double psi = f.vx_m_s * f.omega_rad_s;  // centrifugal term
  switch (dim) {
    case SlipDimension::Longitudinal:
      return Eigen::VectorXd::Constant(1, f.vx_m_s);
    case SlipDimension::Lateral:
      return Eigen::VectorXd::Constant(1, psi);
    case SlipDimension::Angular: {
      Eigen::VectorXd x(3);
      x << psi, f.vx_m_s, f.omega_rad_s;
      return x;
    }
  }
  throw std::invalid_argument("slip_features: unknown dimension");
}

namespace {

// Inverts a small SPD matrix, rejecting rank deficiency. The regression
// refuses to paper over missing excitation with a pseudo-inverse.
Eigen::MatrixXd invert_spd_or_throw(const Eigen::MatrixXd& m, const char* what) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) {
    throw InsufficientExcitationError(std::string(what) +
                                      ": matrix is numerically singular (rank " +
                                      std::to_string(lu.rank()) + " of " +
                                      std::to_string(m.rows()) + ")");
  }
  return lu.inverse();
}

}  // namespace

NIGPrior uninformative_prior(const Eigen::MatrixXd& design, double phi) {
  if (!(phi > 0.0)) {
    throw std::invalid_argument("uninformative_prior: phi must be positive");
  }
  if (design.rows() < 1 || design.cols() < 1) {
    throw std::invalid_argument("uninformative_prior: empty design matrix");
  }
  const Eigen::MatrixXd gram = design.transpose() * design;
  NIGPrior prior;
  prior.scatter = phi * invert_spd_or_throw(gram, "uninformative_prior");
  prior.weights = Eigen::VectorXd::Zero(design.cols());
  prior.shape = 0.0;
  prior.scale = 0.0;
  return prior;
}

double NIGPosterior::weight_stddev(int i) const {
  // Marginal variance of gamma_i under the NIG posterior, b/(a-1) K_ii.
  return std::sqrt(noise_variance_mean() * scatter(i, i));
}

NIGPosterior blr_fit(const NIGPrior& prior, const Eigen::MatrixXd& X, const Eigen::VectorXd& g) {
  const auto k = prior.scatter.rows();
  if (X.cols() != k) {
    throw std::invalid_argument("blr_fit: feature arity mismatch");
  }
  if (X.rows() != g.size()) {
    throw std::invalid_argument("blr_fit: X and g row counts differ");
  }
  const long n = X.rows();
  if (n < 1) {
    throw std::invalid_argument("blr_fit: need at least one observation");
  }

  const Eigen::MatrixXd prior_precision = invert_spd_or_throw(prior.scatter, "blr_fit prior");
  const Eigen::MatrixXd posterior_precision = prior_precision + X.transpose() * X;
  Eigen::MatrixXd scatter = invert_spd_or_throw(posterior_precision, "blr_fit");
  scatter = ((scatter + scatter.transpose()) / 2.0).eval();

  NIGPosterior post;
  post.scatter = scatter;
  post.weights = scatter * (prior_precision * prior.weights + X.transpose() * g);
  post.shape = prior.shape + static_cast<double>(n) / 2.0;
  const double quad_prior = prior.weights.dot(prior_precision * prior.weights);
  const double quad_post = post.weights.dot(posterior_precision * post.weights);
  post.scale = prior.scale + 0.5 * (quad_prior + g.dot(g) - quad_post);
  // The conjugate algebra keeps b >= 0; only cancellation can push it a hair
  // below zero on exact-fit data.
  if (post.scale < 0.0 && post.scale > -1e-9 * std::max(1.0, g.dot(g))) {
    post.scale = 0.0;
  }
  post.obs_count = n;
  return post;
}

NIGPosterior blr_update(const NIGPosterior& posterior, const Eigen::MatrixXd& X,
                        const Eigen::VectorXd& g) {
  if (X.rows() == 0) {
    return posterior;
  }
  NIGPrior as_prior{posterior.weights, posterior.scatter, posterior.shape, posterior.scale};
  NIGPosterior updated = blr_fit(as_prior, X, g);
  updated.obs_count = posterior.obs_count + X.rows();
  return updated;
}

StudentTPrediction blr_predict(const NIGPosterior& posterior, const Eigen::MatrixXd& X_test) {
  if (!posterior.trained()) {
    throw UntrainedModelError("blr_predict: posterior has seen no data");
  }
  if (X_test.cols() != posterior.scatter.rows()) {
    throw std::invalid_argument("blr_predict: feature arity mismatch");
  }
  const auto m = X_test.rows();
  StudentTPrediction pred;
  pred.mean = X_test * posterior.weights;
  Eigen::MatrixXd cov =
      (posterior.scale / posterior.shape) *
      (Eigen::MatrixXd::Identity(m, m) + X_test * posterior.scatter * X_test.transpose());
  pred.covariance = (cov + cov.transpose()) / 2.0;
  pred.dof = 2.0 * posterior.shape;
  return pred;
}

SlipVelocity predict_slip(const SlipModel& model, const BodyVelocity& f) {
  return SlipVelocity{
      model.longitudinal.weights.dot(slip_features(SlipDimension::Longitudinal, f)),
      model.lateral.weights.dot(slip_features(SlipDimension::Lateral, f)),
      model.angular.weights.dot(slip_features(SlipDimension::Angular, f)),
  };
}

BodyVelocity predict_body_velocity(const SlipModel& model, const RobotGeometry& geom,
                                   const WheelSpeeds& wheels_hat) {
  if (!model.trained()) {
    throw UntrainedModelError("predict_body_velocity: slip model is untrained");
  }
  const BodyVelocity f = diff_drive_body_velocity(geom, wheels_hat);
  const SlipVelocity g = predict_slip(model, f);
  return BodyVelocity{f.vx_m_s - g.gx_m_s, f.vy_m_s - g.gy_m_s, f.omega_rad_s - g.gomega_rad_s};
}

}  // namespace slipkit
