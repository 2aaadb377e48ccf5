#include "brickbo/optimize.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "brickbo/error.hpp"

namespace brickbo {

BfgsResult minimize_bfgs(const GradientObjective& f, Eigen::VectorXd x0, const BfgsOptions& opts) {
  const Eigen::Index n = x0.size();
  BfgsResult res;
  res.x = std::move(x0);
  Eigen::VectorXd g(n);
  res.value = f(res.x, g);
  if (!std::isfinite(res.value) || !g.allFinite()) throw NumericalError("BFGS start point is not finite");

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd g_new(n);
  for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
    if (g.lpNorm<Eigen::Infinity>() < opts.gradient_tolerance) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd dir = -h_inv * g;
    double slope = g.dot(dir);
    if (slope >= 0) {
      // Lost descent; restart from steepest descent.
      h_inv.setIdentity();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double step = 1.0;
    double value_new = 0.0;
    Eigen::VectorXd x_new;
    bool accepted = false;
    for (int backtrack = 0; backtrack < 50; ++backtrack) {
      x_new = res.x + step * dir;
      value_new = f(x_new, g_new);
      if (std::isfinite(value_new) && g_new.allFinite() && value_new <= res.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    const Eigen::VectorXd s = x_new - res.x;
    const Eigen::VectorXd y = g_new - g;
    const double improvement = res.value - value_new;
    res.x = x_new;
    res.value = value_new;
    g = g_new;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      h_inv = (eye - rho * s * y.transpose()) * h_inv * (eye - rho * y * s.transpose()) +
              rho * s * s.transpose();
    }
    if (improvement < opts.value_tolerance * (1.0 + std::abs(res.value))) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace brickbo
