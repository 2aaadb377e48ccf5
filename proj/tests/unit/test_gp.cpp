#include <doctest.h>

#include <cmath>

#include "brickbo/error.hpp"
#include "brickbo/gp.hpp"
#include "brickbo/optimize.hpp"
#include "brickbo/rng.hpp"
#include "oracles.hpp"

using namespace brickbo;

namespace {

// Distinct random bricks in a 20 x 20 x 4 region.
std::vector<Primitive> random_bricks(Rng& rng, std::size_t n) {
  std::vector<Primitive> out;
  PrimitiveSet seen;
  while (out.size() < n) {
    const Primitive p{static_cast<int>(rng.index(20)), static_cast<int>(rng.index(20)), static_cast<int>(rng.index(4)),
                      static_cast<int>(rng.index(2))};
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

std::vector<double> row(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace

TEST_CASE("encode uses centers") {
  CHECK(encode({0, 0, 0, 0}) == Eigen::Vector4d(2, 1, 0, 0));
  CHECK(encode({0, 0, 0, 1}) == Eigen::Vector4d(1, 2, 0, 1));
  CHECK(encode({3, 1, 2, 0}) == Eigen::Vector4d(5, 2, 2, 0));
}

TEST_CASE("Matern 5/2 kernel values") {
  GpHyperparams h{1.0, 1.0, 1e-6};
  const Eigen::Vector4d u(0, 0, 0, 0), v(1, 0, 0, 0);
  CHECK(kernel(u, u, h) == doctest::Approx(1.0));
  CHECK(kernel(u, v, h) == doctest::Approx(oracle::matern52(1.0, 1.0, 1.0)).epsilon(1e-14));
  CHECK(kernel(u, v, h) == doctest::Approx(0.5240).epsilon(1e-4));
  h.signal_variance = 2.5;
  CHECK(kernel(v, v, h) == doctest::Approx(2.5));
  double previous = kernel(u, u, h);
  for (double r = 0.25; r < 40; r *= 1.5) {
    const double k = matern52(r, h);
    CHECK(k < previous);
    CHECK(k > 0.0);
    previous = k;
  }
  CHECK(matern52(200.0, h) < 1e-50);
}

TEST_CASE("log marginal likelihood gradient matches central differences") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto bricks = random_bricks(rng, 3 + rng.index(8));
    const Eigen::MatrixXd x = encode_all(bricks);
    Eigen::VectorXd y(x.rows());
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.uniform(-2, 2);
    const GpHyperparams h{rng.uniform(0.5, 4.0), rng.uniform(0.2, 3.0), rng.uniform(1e-3, 0.5)};
    const auto analytic = log_marginal_likelihood(x, y, h);
    const double step = 1e-5;
    for (int k = 0; k < 3; ++k) {
      auto shifted = [&](double delta) {
        GpHyperparams g = h;
        double* field = k == 0 ? &g.lengthscale : (k == 1 ? &g.signal_variance : &g.noise_variance);
        *field = std::exp(std::log(*field) + delta);
        return log_marginal_likelihood(x, y, g).value;
      };
      const double fd = (shifted(step) - shifted(-step)) / (2 * step);
      // Relative error, with a floor for near-zero gradients where the
      // difference quotient is dominated by rounding.
      const double rel = std::abs(fd - analytic.gradient[k]) / std::max(1e-3, std::abs(fd));
      CHECK(rel < 1e-4);
    }
  }
}

TEST_CASE("posterior matches a dense-solve oracle") {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const auto bricks = random_bricks(rng, 3 + rng.index(8));
    const Eigen::MatrixXd x = encode_all(bricks);
    Eigen::VectorXd y(x.rows());
    std::vector<std::vector<double>> rows;
    std::vector<double> ys;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      y[i] = rng.uniform(0, 8);
      rows.push_back(row(x.row(i).transpose()));
      ys.push_back(y[i]);
    }
    const GpHyperparams h{rng.uniform(0.5, 3.0), rng.uniform(0.5, 4.0), rng.uniform(1e-4, 0.1)};
    const GpModel model(x, y, h, false);
    for (int q = 0; q < 5; ++q) {
      const Primitive p{static_cast<int>(rng.index(20)), static_cast<int>(rng.index(20)), static_cast<int>(rng.index(4)),
                        static_cast<int>(rng.index(2))};
      const auto [mean, var] = oracle::dense_posterior(rows, ys, row(encode(p)), h.lengthscale, h.signal_variance,
                                                       h.noise_variance);
      const Posterior got = model.posterior(p);
      CHECK(std::abs(got.mean - mean) < 1e-8);
      CHECK(std::abs(got.variance - std::max(0.0, var)) < 1e-8);
    }
  }
}

TEST_CASE("noise-floor posterior interpolates the training targets") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto bricks = random_bricks(rng, 3 + rng.index(8));
    Eigen::VectorXd y(static_cast<Eigen::Index>(bricks.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = std::round(rng.uniform(0, 8));
    const GpModel model(encode_all(bricks), y, GpHyperparams{1.0, 64.0, kNoiseFloor}, false);
    for (std::size_t i = 0; i < bricks.size(); ++i)
      CHECK(std::abs(model.posterior(bricks[i]).mean - y[static_cast<Eigen::Index>(i)]) < 1e-6);
  }
}

TEST_CASE("posterior reverts to the prior far away and variance is bounded") {
  Rng rng(12);
  const auto bricks = random_bricks(rng, 6);
  Eigen::VectorXd y(6);
  for (int i = 0; i < 6; ++i) y[i] = rng.uniform(0, 8);
  const GpHyperparams h{1.5, 2.0, 1e-3};
  const GpModel model(encode_all(bricks), y, h, false);
  const Posterior far = model.posterior({1000, 1000, 0, 0});
  CHECK(std::abs(far.mean) < 1e-12);
  CHECK(far.variance == doctest::Approx(h.signal_variance));
  for (int q = 0; q < 200; ++q) {
    const Primitive p{static_cast<int>(rng.index(24)) - 2, static_cast<int>(rng.index(24)) - 2,
                      static_cast<int>(rng.index(5)), static_cast<int>(rng.index(2))};
    const Posterior post = model.posterior(p);
    CHECK(post.variance >= 0.0);
    CHECK(post.variance <= h.signal_variance + 1e-12);
  }
}

TEST_CASE("posterior mean is linear in the targets") {
  Rng rng(31);
  const auto bricks = random_bricks(rng, 7);
  const Eigen::MatrixXd x = encode_all(bricks);
  Eigen::VectorXd y(7);
  for (int i = 0; i < 7; ++i) y[i] = rng.uniform(-3, 3);
  const GpHyperparams h{2.0, 1.0, 1e-2};
  const GpModel base(x, y, h, false), scaled(x, 3.5 * y, h, false);
  GpFitOptions opts;
  opts.seed = 4;
  const GpModel fit_base = GpModel::fit(x, y, opts), fit_scaled = GpModel::fit(x, 2.0 * y, opts);
  for (int q = 0; q < 50; ++q) {
    const Primitive p{static_cast<int>(rng.index(20)), static_cast<int>(rng.index(20)), static_cast<int>(rng.index(4)),
                      static_cast<int>(rng.index(2))};
    CHECK(scaled.posterior(p).mean == doctest::Approx(3.5 * base.posterior(p).mean).epsilon(1e-9));
    CHECK(fit_scaled.posterior(p).mean == doctest::Approx(2.0 * fit_base.posterior(p).mean).epsilon(1e-6));
  }
}

TEST_CASE("fit on one point and on constant data") {
  Eigen::MatrixXd x = encode_all(std::vector<Primitive>{{0, 0, 0, 0}});
  Eigen::VectorXd y(1);
  y << 6.0;
  const GpModel one = GpModel::fit(x, y);
  const Posterior at = one.posterior({0, 0, 0, 0});
  CHECK(std::abs(at.mean - 6.0) <= std::sqrt(one.hyperparams().noise_variance) + 1e-12);

  Rng rng(2);
  const auto bricks = random_bricks(rng, 8);
  const GpModel flat = GpModel::fit(encode_all(bricks), Eigen::VectorXd::Constant(8, 3.0));
  const auto& h = flat.hyperparams();
  CHECK((h.signal_variance < 1e-2 || h.lengthscale > 10.0));
  for (const auto& p : bricks) CHECK(flat.posterior(p).mean == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(flat.posterior({40, -40, 0, 0}).mean == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("BFGS finds the Rosenbrock minimum") {
  const GradientObjective rosen = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const double a = 1 - x[0], b = x[1] - x[0] * x[0];
    g.resize(2);
    g[0] = -2 * a - 400 * x[0] * b;
    g[1] = 200 * b;
    return a * a + 100 * b * b;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  BfgsOptions opts;
  opts.max_iterations = 500;
  const auto res = minimize_bfgs(rosen, x0, opts);
  CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(res.value < 1e-8);
}

TEST_CASE("hyperparameter validation") {
  CHECK_THROWS_AS((GpHyperparams{0.0, 1.0, 1e-2}.validate()), Error);
  CHECK_THROWS_AS((GpHyperparams{1.0, -1.0, 1e-2}.validate()), Error);
  CHECK_THROWS_AS((GpHyperparams{1.0, 1.0, 1e-9}.validate()), Error);
  CHECK_NOTHROW((GpHyperparams{1.0, 1.0, kNoiseFloor}.validate()));
}

TEST_CASE("fit is deterministic and respects the bounds") {
  Rng rng(17);
  const auto bricks = random_bricks(rng, 9);
  Eigen::VectorXd y(9);
  for (int i = 0; i < 9; ++i) y[i] = std::round(rng.uniform(0, 8));
  GpFitOptions opts;
  opts.seed = 99;
  const GpModel a = GpModel::fit(encode_all(bricks), y, opts), b = GpModel::fit(encode_all(bricks), y, opts);
  CHECK(a.hyperparams().lengthscale == b.hyperparams().lengthscale);
  CHECK(a.hyperparams().noise_variance == b.hyperparams().noise_variance);
  const auto& h = a.hyperparams();
  CHECK(h.lengthscale >= opts.lengthscale_min);
  CHECK(h.lengthscale <= opts.lengthscale_max);
  CHECK(h.signal_variance >= opts.signal_min);
  CHECK(h.signal_variance <= opts.signal_max);
  CHECK(h.noise_variance >= kNoiseFloor);
  CHECK(h.noise_variance <= opts.noise_max);
  CHECK(a.jitter() == 0.0);
}
