#pragma once

#include <functional>

#include <Eigen/Core>

namespace brickbo {

/// Objective returning f(x) and writing its gradient into the second argument.
using GradientObjective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct BfgsOptions {
  int max_iterations = 200;
  double gradient_tolerance = 1e-6;
  double value_tolerance = 1e-12;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Unconstrained BFGS minimization with an Armijo backtracking line search.
/// Non-finite objective values are treated as infeasible and backed off.
BfgsResult minimize_bfgs(const GradientObjective& f, Eigen::VectorXd x0, const BfgsOptions& opts = {});

}  // namespace brickbo
