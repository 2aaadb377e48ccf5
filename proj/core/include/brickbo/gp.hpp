#pragma once

// Gaussian-process regression over 4-dimensional brick encodings with an
// isotropic Matern 5/2 kernel.

#include <cstdint>
#include <span>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "brickbo/lattice.hpp"

namespace brickbo {

inline constexpr double kNoiseFloor = 1e-6;

struct GpHyperparams {
  double lengthscale = 1.0;
  double signal_variance = 1.0;
  double noise_variance = 1e-2;

  void validate() const;
};

/// (center1, center2, z, d) as reals.
Eigen::Vector4d encode(const Primitive& p);

/// Stacks encodings row-wise into an r x 4 matrix.
Eigen::MatrixXd encode_all(std::span<const Primitive> ps);

double matern52(double distance, const GpHyperparams& h);
double kernel(const Eigen::Vector4d& u, const Eigen::Vector4d& v, const GpHyperparams& h);

/// Log marginal likelihood and its gradient with respect to
/// (log lengthscale, log signal variance, log noise variance).
struct LogLikelihood {
  double value = 0.0;
  Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
};

/// Evaluates on the targets as given (no standardization). Throws
/// NumericalError if the covariance is not positive definite.
LogLikelihood log_marginal_likelihood(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                                      const GpHyperparams& h);

struct GpFitOptions {
  int restarts = 5;
  std::uint64_t seed = 0;
  int max_iterations = 100;
  /// Search box in natural units; the optimizer works on the logs.
  double lengthscale_min = 1e-2, lengthscale_max = 1e2;
  double signal_min = 1e-3, signal_max = 1e3;
  double noise_min = kNoiseFloor, noise_max = 1.0;
  /// Subtract the mean and divide by the std of the targets before fitting.
  bool standardize = true;
};

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;
};

/// Fitted surrogate. Immutable after construction; queries are thread-safe.
class GpModel {
 public:
  /// Builds the model at fixed hyperparameters.
  GpModel(Eigen::MatrixXd inputs, Eigen::VectorXd targets, const GpHyperparams& h, bool standardize = true);

  /// Maximizes the log marginal likelihood by multi-start BFGS.
  static GpModel fit(Eigen::MatrixXd inputs, Eigen::VectorXd targets, const GpFitOptions& opts = {});

  Posterior predict(const Eigen::Vector4d& x) const;
  Posterior posterior(const Primitive& p) const { return predict(encode(p)); }

  const GpHyperparams& hyperparams() const { return hyper_; }
  /// Diagonal jitter added on top of the noise variance to factorize.
  double jitter() const { return jitter_; }
  Eigen::Index size() const { return inputs_.rows(); }
  /// Log marginal likelihood of the (standardized) training targets.
  double log_likelihood() const { return log_likelihood_; }

 private:
  void factorize();

  Eigen::MatrixXd inputs_;
  Eigen::VectorXd targets_;
  GpHyperparams hyper_;
  double offset_ = 0.0;
  double scale_ = 1.0;
  double jitter_ = 0.0;
  double log_likelihood_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
};

}  // namespace brickbo
