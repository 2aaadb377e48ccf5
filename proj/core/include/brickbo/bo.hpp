#pragma once

// Candidate selection for the next brick: random initial evaluations
// followed by GP-UCB queries under random scalarization of the
// occupiability and stability objectives.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "brickbo/gp.hpp"
#include "brickbo/lattice.hpp"
#include "brickbo/occupiability.hpp"
#include "brickbo/rng.hpp"
#include "brickbo/stability.hpp"

namespace brickbo {

struct BoConfig {
  std::size_t initial = 10;              ///< v: random candidates evaluated first
  std::size_t candidates = 20;           ///< q: total candidates evaluated per step
  std::size_t acquisition_samples = 1000;  ///< zeta
  /// When set, acquisition samples are drawn until this wall-clock budget
  /// runs out instead of a fixed zeta. Not reproducible.
  std::optional<double> time_budget_seconds;
  double gamma0 = 1.0;  ///< gamma_t = gamma0 + gamma1 * ln(1 + t)
  double gamma1 = 1.0;
  double lambda_o_min = 0.8, lambda_o_max = 0.9;
  double lambda_s_min = 0.0, lambda_s_max = 0.1;
  int gp_restarts = 5;
  std::uint64_t seed = 0;

  void validate() const;
  /// Exploration weight after t observations.
  double gamma(std::size_t t) const;
};

struct Observation {
  Primitive primitive;
  double y_o = 0.0;
  double y_s = 0.0;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct Scores {
  double y_o = 0.0;
  double y_s = 0.0;
};

/// Scores a candidate against a frozen combination.
using CandidateEvaluator = std::function<Scores(const Primitive&)>;

/// (occupiability score, -stability penalty of c + candidate).
CandidateEvaluator make_shape_evaluator(std::span<const Primitive> c, const TargetShape& target,
                                        const StabilityEvaluator& stability);

/// mu + gamma * sigma.
double ucb(double mean, double variance, double gamma);

/// lambda_o * ucb_o + lambda_s * ucb_s. `model_s` may be null when the
/// stability weight is zero.
double scalarized_acquisition(const Primitive& p, const GpModel& model_o, const GpModel* model_s,
                              double lambda_o, double lambda_s, double gamma);

/// Index of the maximizer of scalarized_acquisition; ties go to the
/// smallest primitive in enumeration order. `candidates` must be nonempty.
std::size_t argmax_acquisition(std::span<const Primitive> candidates, const GpModel& model_o,
                               const GpModel* model_s, double lambda_o, double lambda_s, double gamma);

struct QueryResult {
  Primitive primitive;
  double lambda_o = 0.0;
  double lambda_s = 0.0;
  double gamma = 0.0;
  std::vector<Primitive> samples;  ///< the zeta placements scored
};

struct QueryOptions {
  /// When false the stability surrogate is skipped and lambda_s is 0.
  bool use_stability = true;
};

/// Fits one surrogate per objective on `history`, draws the scalarization
/// weights, samples zeta placements from `pool` and returns the maximizer.
/// Throws SaturatedError on an empty pool and Error on empty history.
QueryResult query_from_pool(std::span<const Primitive> pool, std::span<const Observation> history,
                            const BoConfig& cfg, Rng& rng, const QueryOptions& opts = {});

/// Same as query_from_pool over the attachments of `c` inside `bounds`
/// that were not observed yet.
Primitive query_candidate(std::span<const Primitive> c, std::span<const Observation> history,
                          const BoConfig& cfg, const Bounds& bounds, Rng& rng, const QueryOptions& opts = {});

struct Selection {
  Primitive primitive;
  std::vector<Observation> observations;
};

/// The observation with the highest y_o, then highest y_s, then smallest
/// primitive.
const Observation& best_observation(std::span<const Observation> observations);

struct SelectOptions {
  bool use_stability = true;
  /// Placements banned at this step (rollback exclusions).
  const PrimitiveSet* excluded = nullptr;
};

/// Evaluates v random feasible placements, then queries q - v more through
/// the surrogate, and returns the best observed placement with every
/// observation. Throws SaturatedError when nothing is feasible.
Selection select_next(std::span<const Primitive> c, const BoConfig& cfg, const Bounds& bounds,
                      const CandidateEvaluator& evaluate, Rng& rng, const SelectOptions& opts = {});

/// Convenience overload scoring occupiability against `target` and the
/// static stability penalty.
Selection select_next(std::span<const Primitive> c, const BoConfig& cfg, const TargetShape& target,
                      const StabilityConfig& stability_cfg, Rng& rng);

}  // namespace brickbo
