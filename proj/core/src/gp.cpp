#include "brickbo/gp.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "brickbo/error.hpp"
#include "brickbo/optimize.hpp"
#include "brickbo/rng.hpp"

namespace brickbo {
namespace {

const double kSqrt5 = std::sqrt(5.0);

Eigen::MatrixXd signal_covariance(const Eigen::MatrixXd& x, const GpHyperparams& h) {
  const Eigen::Index r = x.rows();
  Eigen::MatrixXd k(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    k(i, i) = h.signal_variance;
    for (Eigen::Index j = 0; j < i; ++j) k(i, j) = k(j, i) = matern52((x.row(i) - x.row(j)).norm(), h);
  }
  return k;
}

// Cholesky of cov + noise*I, escalating diagonal jitter on failure.
double factorize_with_jitter(const Eigen::MatrixXd& cov, double noise, Eigen::LLT<Eigen::MatrixXd>& llt) {
  static constexpr std::array<double, 4> kJitter{0.0, 1e-6, 1e-4, 1e-2};
  for (double jitter : kJitter) {
    Eigen::MatrixXd k = cov;
    k.diagonal().array() += noise + jitter;
    llt.compute(k);
    if (llt.info() == Eigen::Success) return jitter;
  }
  throw NumericalError("covariance is not positive definite after jitter escalation");
}

}  // namespace

void GpHyperparams::validate() const {
  if (!(lengthscale > 0) || !(signal_variance > 0)) throw Error("GP hyperparameters must be positive");
  if (!(noise_variance >= kNoiseFloor)) throw Error("GP noise variance below floor");
}

Eigen::Vector4d encode(const Primitive& p) {
  return {p.center1(), p.center2(), static_cast<double>(p.z), static_cast<double>(p.d)};
}

Eigen::MatrixXd encode_all(std::span<const Primitive> ps) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(ps.size()), 4);
  for (std::size_t i = 0; i < ps.size(); ++i) x.row(static_cast<Eigen::Index>(i)) = encode(ps[i]).transpose();
  return x;
}

double matern52(double distance, const GpHyperparams& h) {
  const double s = kSqrt5 * distance / h.lengthscale;
  return h.signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

double kernel(const Eigen::Vector4d& u, const Eigen::Vector4d& v, const GpHyperparams& h) {
  return matern52((u - v).norm(), h);
}

LogLikelihood log_marginal_likelihood(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                      const GpHyperparams& h) {
  const Eigen::Index r = x.rows();
  Eigen::MatrixXd k = signal_covariance(x, h);
  Eigen::MatrixXd cov = k;
  cov.diagonal().array() += h.noise_variance;
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw NumericalError("covariance is not positive definite");

  const Eigen::VectorXd alpha = llt.solve(y);
  const Eigen::MatrixXd l = llt.matrixL();
  const double log_det = 2.0 * l.diagonal().array().log().sum();

  LogLikelihood out;
  out.value = -0.5 * y.dot(alpha) - 0.5 * log_det - 0.5 * static_cast<double>(r) * std::log(2.0 * std::numbers::pi);

  // d/dtheta = 0.5 tr((alpha alpha^T - cov^-1) dcov/dtheta)
  const Eigen::MatrixXd w = alpha * alpha.transpose() - llt.solve(Eigen::MatrixXd::Identity(r, r));
  Eigen::MatrixXd dk_dlen(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    dk_dlen(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double s = kSqrt5 * (x.row(i) - x.row(j)).norm() / h.lengthscale;
      dk_dlen(i, j) = dk_dlen(j, i) = h.signal_variance * s * s * (1.0 + s) / 3.0 * std::exp(-s);
    }
  }
  out.gradient[0] = 0.5 * (w.array() * dk_dlen.array()).sum();
  out.gradient[1] = 0.5 * (w.array() * k.array()).sum();
  out.gradient[2] = 0.5 * h.noise_variance * w.trace();
  return out;
}

GpModel::GpModel(Eigen::MatrixXd inputs, Eigen::VectorXd targets, const GpHyperparams& h, bool standardize)
    : inputs_(std::move(inputs)), targets_(std::move(targets)), hyper_(h) {
  if (inputs_.rows() < 1 || inputs_.cols() != 4 || targets_.size() != inputs_.rows())
    throw Error("GP needs r >= 1 rows of 4-dimensional inputs with matching targets");
  if (!targets_.allFinite()) throw Error("GP targets must be finite");
  hyper_.validate();
  if (standardize) {
    offset_ = targets_.mean();
    const double var = (targets_.array() - offset_).square().mean();
    scale_ = var > 1e-24 ? std::sqrt(var) : 1.0;
  }
  targets_ = (targets_.array() - offset_) / scale_;
  factorize();
}

void GpModel::factorize() {
  const Eigen::MatrixXd k = signal_covariance(inputs_, hyper_);
  jitter_ = factorize_with_jitter(k, hyper_.noise_variance, llt_);
  alpha_ = llt_.solve(targets_);
  const Eigen::MatrixXd l = llt_.matrixL();
  log_likelihood_ = -0.5 * targets_.dot(alpha_) - l.diagonal().array().log().sum() -
                    0.5 * static_cast<double>(targets_.size()) * std::log(2.0 * std::numbers::pi);
}

GpModel GpModel::fit(Eigen::MatrixXd inputs, Eigen::VectorXd targets, const GpFitOptions& opts) {
  if (inputs.rows() < 1 || targets.size() != inputs.rows()) throw Error("GP fit needs r >= 1 observations");
  if (!targets.allFinite()) throw Error("GP targets must be finite");

  Eigen::VectorXd y = targets;
  if (opts.standardize) {
    const double mean = y.mean();
    const double var = (y.array() - mean).square().mean();
    y = (y.array() - mean) / (var > 1e-24 ? std::sqrt(var) : 1.0);
  }

  // Each log-hyperparameter lives in [lo, hi] through lo + (hi - lo) * sigmoid(u),
  // so BFGS runs unconstrained in u.
  const Eigen::Vector3d lo(std::log(opts.lengthscale_min), std::log(opts.signal_min), std::log(opts.noise_min));
  const Eigen::Vector3d hi(std::log(opts.lengthscale_max), std::log(opts.signal_max), std::log(opts.noise_max));
  auto to_hyper = [&](const Eigen::VectorXd& u, Eigen::Vector3d* dtheta_du) {
    GpHyperparams h;
    Eigen::Vector3d theta;
    for (int i = 0; i < 3; ++i) {
      const double sig = 1.0 / (1.0 + std::exp(-u[i]));
      theta[i] = lo[i] + (hi[i] - lo[i]) * sig;
      if (dtheta_du) (*dtheta_du)[i] = (hi[i] - lo[i]) * sig * (1.0 - sig);
    }
    h.lengthscale = std::exp(theta[0]);
    h.signal_variance = std::exp(theta[1]);
    h.noise_variance = std::max(std::exp(theta[2]), kNoiseFloor);
    return h;
  };
  const GradientObjective objective = [&](const Eigen::VectorXd& u, Eigen::VectorXd& grad) {
    Eigen::Vector3d dtheta;
    const GpHyperparams h = to_hyper(u, &dtheta);
    try {
      const LogLikelihood ll = log_marginal_likelihood(inputs, y, h);
      grad = -(ll.gradient.array() * dtheta.array()).matrix();
      return -ll.value;
    } catch (const NumericalError&) {
      grad = Eigen::VectorXd::Zero(3);
      return std::numeric_limits<double>::infinity();
    }
  };

  Rng rng(opts.seed);
  BfgsOptions bfgs;
  bfgs.max_iterations = opts.max_iterations;
  double best_value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_u = Eigen::VectorXd::Zero(3);
  for (int start = 0; start < std::max(1, opts.restarts); ++start) {
    Eigen::VectorXd u0 = Eigen::VectorXd::Zero(3);
    if (start > 0)
      for (int i = 0; i < 3; ++i) u0[i] = rng.uniform(-3.0, 3.0);
    try {
      const BfgsResult res = minimize_bfgs(objective, u0, bfgs);
      if (res.value < best_value) {
        best_value = res.value;
        best_u = res.x;
      }
    } catch (const NumericalError&) {
      // Start point not factorizable; try the next one.
    }
  }
  if (!std::isfinite(best_value)) throw NumericalError("GP hyperparameter search found no feasible point");
  return GpModel(std::move(inputs), std::move(targets), to_hyper(best_u, nullptr), opts.standardize);
}

Posterior GpModel::predict(const Eigen::Vector4d& x) const {
  const Eigen::Index r = inputs_.rows();
  Eigen::VectorXd kx(r);
  for (Eigen::Index i = 0; i < r; ++i) kx[i] = matern52((inputs_.row(i).transpose() - x).norm(), hyper_);
  Posterior out;
  out.mean = offset_ + scale_ * kx.dot(alpha_);
  const Eigen::VectorXd v = llt_.matrixL().solve(kx);
  out.variance = std::max(0.0, hyper_.signal_variance - v.squaredNorm()) * scale_ * scale_;
  return out;
}

}  // namespace brickbo
