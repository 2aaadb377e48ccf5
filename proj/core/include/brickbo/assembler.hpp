#pragma once

// Sequential assembly: the outer loop with rollback, the explicit-function
// experiments with their baselines, and small-n combination counting.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brickbo/bo.hpp"
#include "brickbo/lattice.hpp"
#include "brickbo/occupiability.hpp"
#include "brickbo/stability.hpp"

namespace brickbo {

enum class RollbackMode {
  /// Roll back when the window's summed shortfall from 8 reaches alpha.
  kShortfall,
  /// The printed rule: roll back when sum(max_q y_o - y_o) < alpha.
  kLiteral,
};

struct AssemblyConfig {
  int steps = 10;            ///< T
  int rollback_window = 2;   ///< tau_rb
  double rollback_threshold = 8.0;  ///< alpha; 0 disables rollback
  RollbackMode rollback_mode = RollbackMode::kShortfall;
  int max_repeats = 5;
  Combination initial{Primitive{0, 0, 0, 0}};

  void validate() const;
};

struct StepRecord {
  int t = 0;  ///< bricks assembled after this step, not counting the initial ones
  Primitive brick;
  double y_o = 0.0;
  double y_s = 0.0;
  std::vector<Observation> observations;
  bool rollback = false;
  bool rollback_skipped = false;   ///< rule fired but the repeat guard suppressed it
  std::vector<Primitive> removed;  ///< bricks dropped by the rollback, newest first
};

enum class AssemblyStatus { kComplete, kSaturated };

struct AssemblyTrace {
  AssemblyConfig config;
  std::vector<StepRecord> steps;
  Combination final;
  AssemblyStatus status = AssemblyStatus::kComplete;

  int rollbacks() const;
};

/// Runs the assembly loop against `target`. Saturation ends the run early
/// with status kSaturated instead of throwing.
AssemblyTrace assemble(const TargetShape& target, const AssemblyConfig& cfg, const BoConfig& bo_cfg,
                       const StabilityConfig& stability_cfg);

/// Lower-level entry point with a caller-supplied stability backend.
AssemblyTrace assemble(const TargetShape& target, const AssemblyConfig& cfg, const BoConfig& bo_cfg,
                       const StabilityEvaluator& stability);

/// Rebuilds the final combination from the initial one and the step log.
Combination replay(const AssemblyTrace& trace);

// ---------------------------------------------------------------------------
// Explicit evaluation functions

enum class Objective { kHeight, kWidth, kDepth, kStuds };
enum class Method { kBo, kRandom, kGreedy, kOracle };

int evaluate_objective(Objective objective, std::span<const Primitive> c);

struct Curve {
  Method method = Method::kBo;
  Objective objective = Objective::kHeight;
  std::uint64_t seed = 0;
  std::vector<double> values;  ///< best-so-far objective value after steps 1..T
  Combination final;
};

/// Single-objective assembly from the origin brick, stability and rollback
/// off, scored by the per-step increment of `objective`. One curve per seed;
/// the oracle is seed independent and returns a single curve.
std::vector<Curve> assemble_explicit(Objective objective, Method method, int steps,
                                     std::span<const std::uint64_t> seeds, const BoConfig& bo_cfg = {},
                                     const Bounds& bounds = Bounds::unbounded());

std::string to_string(Objective o);
std::string to_string(Method m);
std::optional<Objective> parse_objective(std::string_view s);
std::optional<Method> parse_method(std::string_view s);

// ---------------------------------------------------------------------------
// Combination counting

enum class CountConvention {
  /// Distinct brick sets containing (0,0,0,0) with every z >= 0.
  kAnchored,
  /// Distinct connected shapes up to translation.
  kTranslation,
  /// Distinct connected shapes up to translation and quarter-turn rotation.
  kRotation,
};

struct CountResult {
  std::uint64_t total = 0;
  /// For n = 2 under kAnchored: split by the second brick's direction.
  std::uint64_t parallel = 0;
  std::uint64_t perpendicular = 0;
  std::string convention;
};

/// Exhaustive enumeration for n in {2, 3}.
CountResult count_combinations(int n, CountConvention convention = CountConvention::kAnchored);

std::optional<CountConvention> parse_convention(std::string_view s);

}  // namespace brickbo
