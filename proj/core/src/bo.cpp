#include "brickbo/bo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>

#include "brickbo/error.hpp"

namespace brickbo {

void BoConfig::validate() const {
  if (initial < 1) throw Error("v (initial candidates) must be >= 1");
  if (candidates <= initial) throw Error("q (candidates) must exceed v (initial candidates)");
  if (acquisition_samples < 1) throw Error("zeta (acquisition samples) must be >= 1");
  if (time_budget_seconds && !(*time_budget_seconds > 0)) throw Error("time budget must be positive");
  if (!(gamma0 >= 0) || !(gamma1 >= 0)) throw Error("gamma schedule parameters must be >= 0");
  auto in_unit = [](double lo, double hi) { return lo >= 0 && hi <= 1 && lo <= hi; };
  if (!in_unit(lambda_o_min, lambda_o_max) || !in_unit(lambda_s_min, lambda_s_max))
    throw Error("scalarization ranges must be ordered within [0, 1]");
  if (gp_restarts < 1) throw Error("gp restarts must be >= 1");
}

double BoConfig::gamma(std::size_t t) const { return gamma0 + gamma1 * std::log1p(static_cast<double>(t)); }

CandidateEvaluator make_shape_evaluator(std::span<const Primitive> c, const TargetShape& target,
                                        const StabilityEvaluator& stability) {
  auto grid = std::make_shared<OccupiabilityGrid>(target, c);
  auto base = std::make_shared<Combination>(c.begin(), c.end());
  return [grid, base, &stability](const Primitive& p) {
    Scores s;
    s.y_o = grid->score(p);
    Combination with = *base;
    with.push_back(p);
    s.y_s = -stability.penalty(with);
    return s;
  };
}

double ucb(double mean, double variance, double gamma) { return mean + gamma * std::sqrt(std::max(0.0, variance)); }

double scalarized_acquisition(const Primitive& p, const GpModel& model_o, const GpModel* model_s,
                              double lambda_o, double lambda_s, double gamma) {
  const Posterior po = model_o.posterior(p);
  double a = lambda_o * ucb(po.mean, po.variance, gamma);
  if (model_s && lambda_s != 0.0) {
    const Posterior ps = model_s->posterior(p);
    a += lambda_s * ucb(ps.mean, ps.variance, gamma);
  }
  return a;
}

std::size_t argmax_acquisition(std::span<const Primitive> candidates, const GpModel& model_o,
                               const GpModel* model_s, double lambda_o, double lambda_s, double gamma) {
  if (candidates.empty()) throw Error("no candidates to score");
  std::size_t best = 0;
  double best_value = scalarized_acquisition(candidates[0], model_o, model_s, lambda_o, lambda_s, gamma);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double a = scalarized_acquisition(candidates[i], model_o, model_s, lambda_o, lambda_s, gamma);
    if (a > best_value || (a == best_value && candidates[i] < candidates[best])) {
      best = i;
      best_value = a;
    }
  }
  return best;
}

QueryResult query_from_pool(std::span<const Primitive> pool, std::span<const Observation> history,
                            const BoConfig& cfg, Rng& rng, const QueryOptions& opts) {
  if (pool.empty()) throw SaturatedError();
  if (history.empty()) throw Error("query needs at least one observation");

  std::vector<Primitive> observed;
  Eigen::VectorXd y_o(static_cast<Eigen::Index>(history.size()));
  Eigen::VectorXd y_s(static_cast<Eigen::Index>(history.size()));
  for (std::size_t i = 0; i < history.size(); ++i) {
    observed.push_back(history[i].primitive);
    y_o[static_cast<Eigen::Index>(i)] = history[i].y_o;
    y_s[static_cast<Eigen::Index>(i)] = history[i].y_s;
  }
  const Eigen::MatrixXd inputs = encode_all(observed);

  GpFitOptions fit_opts;
  fit_opts.restarts = cfg.gp_restarts;
  fit_opts.seed = rng.next_seed();
  const GpModel model_o = GpModel::fit(inputs, y_o, fit_opts);
  std::optional<GpModel> model_s;
  if (opts.use_stability) {
    fit_opts.seed = rng.next_seed();
    model_s = GpModel::fit(inputs, y_s, fit_opts);
  }

  QueryResult out;
  out.lambda_o = rng.uniform(cfg.lambda_o_min, cfg.lambda_o_max);
  out.lambda_s = opts.use_stability ? rng.uniform(cfg.lambda_s_min, cfg.lambda_s_max) : 0.0;
  out.gamma = cfg.gamma(history.size());
  const GpModel* ms = model_s ? &*model_s : nullptr;

  if (!cfg.time_budget_seconds) {
    out.samples = sample_from(pool, cfg.acquisition_samples, rng);
    out.primitive = out.samples[argmax_acquisition(out.samples, model_o, ms, out.lambda_o, out.lambda_s, out.gamma)];
    return out;
  }

  // Wall-clock mode: keep drawing (without replacement) until the budget is spent.
  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + std::chrono::duration<double>(*cfg.time_budget_seconds);
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  double best_value = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::swap(order[i], order[i + rng.index(order.size() - i)]);
    const Primitive& p = pool[order[i]];
    const double a = scalarized_acquisition(p, model_o, ms, out.lambda_o, out.lambda_s, out.gamma);
    if (out.samples.empty() || a > best_value || (a == best_value && p < out.primitive)) {
      best_value = a;
      out.primitive = p;
    }
    out.samples.push_back(p);
    if (Clock::now() >= deadline) break;
  }
  return out;
}

Primitive query_candidate(std::span<const Primitive> c, std::span<const Observation> history,
                          const BoConfig& cfg, const Bounds& bounds, Rng& rng, const QueryOptions& opts) {
  PrimitiveSet seen;
  for (const auto& o : history) seen.insert(o.primitive);
  std::vector<Primitive> pool;
  for (const auto& p : enumerate_attachments(c, bounds))
    if (!seen.contains(p)) pool.push_back(p);
  return query_from_pool(pool, history, cfg, rng, opts).primitive;
}

const Observation& best_observation(std::span<const Observation> observations) {
  if (observations.empty()) throw Error("no observations");
  const Observation* best = &observations[0];
  for (const auto& o : observations) {
    if (o.y_o > best->y_o || (o.y_o == best->y_o && o.y_s > best->y_s) ||
        (o.y_o == best->y_o && o.y_s == best->y_s && o.primitive < best->primitive))
      best = &o;
  }
  return *best;
}

Selection select_next(std::span<const Primitive> c, const BoConfig& cfg, const Bounds& bounds,
                      const CandidateEvaluator& evaluate, Rng& rng, const SelectOptions& opts) {
  cfg.validate();
  std::vector<Primitive> pool;
  for (const auto& p : enumerate_attachments(c, bounds))
    if (!opts.excluded || !opts.excluded->contains(p)) pool.push_back(p);
  if (pool.empty()) throw SaturatedError();

  Selection out;
  auto observe = [&](const Primitive& p) {
    const Scores s = evaluate(p);
    out.observations.push_back({p, s.y_o, s.y_s});
    pool.erase(std::find(pool.begin(), pool.end(), p));
  };
  for (const auto& p : sample_from(pool, cfg.initial, rng)) observe(p);

  const QueryOptions query_opts{opts.use_stability};
  while (out.observations.size() < cfg.candidates && !pool.empty())
    observe(query_from_pool(pool, out.observations, cfg, rng, query_opts).primitive);

  out.primitive = best_observation(out.observations).primitive;
  return out;
}

Selection select_next(std::span<const Primitive> c, const BoConfig& cfg, const TargetShape& target,
                      const StabilityConfig& stability_cfg, Rng& rng) {
  const StaticStabilityEvaluator stability(stability_cfg);
  return select_next(c, cfg, target.bounds(), make_shape_evaluator(c, target, stability), rng);
}

}  // namespace brickbo
