#pragma once

#include <memory>
#include <span>
#include <vector>

#include "brickbo/lattice.hpp"

namespace brickbo {

struct StabilityConfig {
  /// Lateral shift of the center of mass (stud units) emulating a push in
  /// each of the four plan directions.
  double perturbation = 0.5;
  double w_margin = 1.0;
  double w_disconnect = 1000.0;

  void validate() const;
};

/// Per-interface breakdown of the static analysis, for inspection.
struct InterfaceReport {
  int layer = 0;          ///< interface between layer-1 and layer (0 = ground)
  double com1 = 0.0;      ///< plan center of mass of all bricks at or above `layer`
  double com2 = 0.0;
  double margin = 0.0;    ///< signed distance of the unshifted COM to the support hull
  double penalty = 0.0;   ///< summed over the four shifted COMs, unweighted
  bool supported = true;  ///< false when the support region is empty
};

struct StabilityReport {
  std::vector<InterfaceReport> interfaces;
  int components = 1;
  double penalty = 0.0;
};

/// Full static analysis. Throws on an empty combination.
StabilityReport analyze_stability(std::span<const Primitive> c, const StabilityConfig& cfg = {});

/// Non-negative penalty; 0 means every interface keeps its center of mass
/// inside the support hull under all four pushes. Larger is less stable.
double stability_penalty(std::span<const Primitive> c, const StabilityConfig& cfg = {});

/// Signed distance from `point` to the convex hull of `points`: positive
/// inside, negative outside, zero on the boundary. Degenerate hulls (a point
/// or a segment) have no interior.
double signed_hull_distance(std::span<const std::array<double, 2>> points, std::array<double, 2> point);

/// Stability scorer seen by the optimizer. The static analyzer is the only
/// backend shipped; a dynamics simulator can implement the same interface.
class StabilityEvaluator {
 public:
  virtual ~StabilityEvaluator() = default;
  virtual double penalty(std::span<const Primitive> c) const = 0;
};

class StaticStabilityEvaluator final : public StabilityEvaluator {
 public:
  explicit StaticStabilityEvaluator(StabilityConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }
  double penalty(std::span<const Primitive> c) const override { return stability_penalty(c, cfg_); }

 private:
  StabilityConfig cfg_;
};

}  // namespace brickbo
