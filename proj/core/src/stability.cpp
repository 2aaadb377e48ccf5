#include "brickbo/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "brickbo/error.hpp"

namespace brickbo {
namespace {

using Point = std::array<double, 2>;

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain, counter-clockwise, collinear points dropped.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double segment_distance(const Point& a, const Point& b, const Point& p) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p[0] - (a[0] + t * dx), p[1] - (a[1] + t * dy));
}

double hull_distance(const std::vector<Point>& hull, const Point& p) {
  if (hull.size() == 1) return -std::hypot(p[0] - hull[0][0], p[1] - hull[0][1]);
  if (hull.size() == 2) return -segment_distance(hull[0], hull[1], p);
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < 0) inside = false;
    best = std::min(best, segment_distance(a, b, p));
  }
  return inside ? best : -best;
}

}  // namespace

void StabilityConfig::validate() const {
  if (!(perturbation >= 0)) throw Error("stability perturbation must be >= 0");
  if (!(w_margin >= 0) || !(w_disconnect >= 0)) throw Error("stability weights must be >= 0");
}

double signed_hull_distance(std::span<const Point> points, Point point) {
  if (points.empty()) throw Error("empty support region");
  return hull_distance(convex_hull({points.begin(), points.end()}), point);
}

StabilityReport analyze_stability(std::span<const Primitive> c, const StabilityConfig& cfg) {
  if (c.empty()) throw Error("empty combination");
  cfg.validate();
  StabilityReport report;
  int top = 0;
  for (const auto& b : c) top = std::max(top, b.z);

  static constexpr std::array<Point, 4> kPushes{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  double margin_sum = 0.0;
  for (int layer = 0; layer <= top; ++layer) {
    InterfaceReport iface;
    iface.layer = layer;
    int mass = 0;
    for (const auto& b : c) {
      if (b.z < layer) continue;
      iface.com1 += b.center1();
      iface.com2 += b.center2();
      ++mass;
    }
    if (mass == 0) continue;
    iface.com1 /= mass;
    iface.com2 /= mass;

    // Plan cells carrying the load across this interface.
    std::set<std::pair<int, int>> support;
    for (const auto& upper : c) {
      if (upper.z != layer) continue;
      if (layer == 0) {
        for (const auto& cell : footprint(upper)) support.insert({cell.i, cell.j});
        continue;
      }
      for (const auto& lower : c) {
        if (lower.z != layer - 1 || plan_overlap_area(upper, lower) == 0) continue;
        for (const auto& cell : footprint(upper))
          if (cell.i >= lower.a1 && cell.i < lower.a1 + lower.length1() && cell.j >= lower.a2 &&
              cell.j < lower.a2 + lower.length2())
            support.insert({cell.i, cell.j});
      }
    }
    if (support.empty()) {
      // Floating part; charged through the component count instead.
      iface.supported = false;
      report.interfaces.push_back(iface);
      continue;
    }
    std::vector<Point> centers;
    centers.reserve(support.size());
    for (const auto& [i, j] : support) centers.push_back({i + 0.5, j + 0.5});
    const auto hull = convex_hull(std::move(centers));
    iface.margin = hull_distance(hull, {iface.com1, iface.com2});
    for (const auto& dir : kPushes) {
      const Point shifted{iface.com1 + cfg.perturbation * dir[0], iface.com2 + cfg.perturbation * dir[1]};
      iface.penalty += std::max(0.0, -hull_distance(hull, shifted));
    }
    margin_sum += iface.penalty;
    report.interfaces.push_back(iface);
  }
  report.components = connected_components(c);
  report.penalty = cfg.w_margin * margin_sum + cfg.w_disconnect * (report.components - 1);
  return report;
}

double stability_penalty(std::span<const Primitive> c, const StabilityConfig& cfg) {
  return analyze_stability(c, cfg).penalty;
}

}  // namespace brickbo
