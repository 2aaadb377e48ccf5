#include "brickbo/assembler.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "brickbo/error.hpp"

namespace brickbo {

void AssemblyConfig::validate() const {
  if (steps < 1) throw Error("T (steps) must be >= 1");
  if (rollback_window < 1) throw Error("rollback window must be >= 1");
  if (!(rollback_threshold >= 0)) throw Error("rollback threshold must be >= 0");
  if (max_repeats < 1) throw Error("max repeats must be >= 1");
  if (initial.empty()) throw Error("initial combination is empty");
  if (auto bad = first_violation(initial))
    throw Error("initial combination is infeasible at brick " + std::to_string(*bad));
}

int AssemblyTrace::rollbacks() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const StepRecord& s) { return s.rollback; }));
}

AssemblyTrace assemble(const TargetShape& target, const AssemblyConfig& cfg, const BoConfig& bo_cfg,
                       const StabilityConfig& stability_cfg) {
  const StaticStabilityEvaluator stability(stability_cfg);
  return assemble(target, cfg, bo_cfg, stability);
}

AssemblyTrace assemble(const TargetShape& target, const AssemblyConfig& cfg, const BoConfig& bo_cfg,
                       const StabilityEvaluator& stability) {
  cfg.validate();
  bo_cfg.validate();

  AssemblyTrace trace;
  trace.config = cfg;
  Rng rng(bo_cfg.seed);
  Combination c = cfg.initial;

  // Per assembled brick: chosen y_o and the best y_o among that step's candidates.
  std::vector<std::pair<double, double>> scores;
  std::map<int, PrimitiveSet> excluded;
  std::map<int, int> visits;
  const int window = cfg.rollback_window;

  int t = 0;
  while (t < cfg.steps) {
    SelectOptions opts;
    if (auto it = excluded.find(t + 1); it != excluded.end()) opts.excluded = &it->second;
    Selection sel;
    try {
      sel = select_next(c, bo_cfg, target.bounds(), make_shape_evaluator(c, target, stability), rng, opts);
    } catch (const SaturatedError&) {
      trace.status = AssemblyStatus::kSaturated;
      break;
    }
    const Observation chosen = best_observation(sel.observations);
    double best_y_o = chosen.y_o;
    for (const auto& o : sel.observations) best_y_o = std::max(best_y_o, o.y_o);

    c.push_back(chosen.primitive);
    ++t;
    ++visits[t];
    scores.emplace_back(chosen.y_o, best_y_o);

    StepRecord rec;
    rec.t = t;
    rec.brick = chosen.primitive;
    rec.y_o = chosen.y_o;
    rec.y_s = chosen.y_s;
    rec.observations = std::move(sel.observations);

    bool fire = false;
    if (t >= window && cfg.rollback_threshold > 0) {
      double sum = 0.0;
      for (int k = 0; k < window; ++k) {
        const auto& [y, best] = scores[scores.size() - 1 - static_cast<std::size_t>(k)];
        sum += cfg.rollback_mode == RollbackMode::kShortfall ? 8.0 - y : best - y;
      }
      fire = cfg.rollback_mode == RollbackMode::kShortfall ? sum >= cfg.rollback_threshold
                                                             : sum < cfg.rollback_threshold;
    }
    if (fire && visits[t] >= cfg.max_repeats) {
      rec.rollback_skipped = true;
    } else if (fire) {
      rec.rollback = true;
      for (int k = 0; k < window; ++k) {
        excluded[t - k].insert(c.back());
        rec.removed.push_back(c.back());
        c.pop_back();
        scores.pop_back();
      }
      t -= window;
    }
    trace.steps.push_back(std::move(rec));
  }
  trace.final = std::move(c);
  return trace;
}

Combination replay(const AssemblyTrace& trace) {
  Combination c = trace.config.initial;
  for (const auto& step : trace.steps) {
    c.push_back(step.brick);
    if (!step.rollback) continue;
    for (const auto& removed : step.removed) {
      if (c.empty() || c.back() != removed) throw Error("trace rollback does not match the assembly");
      c.pop_back();
    }
  }
  return c;
}

// ---------------------------------------------------------------------------

int evaluate_objective(Objective objective, std::span<const Primitive> c) {
  switch (objective) {
    case Objective::kHeight: return height(c);
    case Objective::kWidth: return width(c);
    case Objective::kDepth: return depth(c);
    case Objective::kStuds: return connected_studs(c);
  }
  throw Error("unknown objective");
}

namespace {

Observation evaluate_increment(Objective objective, Combination& c, int base, const Primitive& p) {
  c.push_back(p);
  const int value = evaluate_objective(objective, c);
  c.pop_back();
  return {p, static_cast<double>(value - base), 0.0};
}

Primitive pick_explicit(Objective objective, Method method, Combination& c, const BoConfig& bo_cfg,
                        const Bounds& bounds, Rng& rng) {
  const int base = evaluate_objective(objective, c);
  if (method == Method::kBo) {
    const CandidateEvaluator eval = [&](const Primitive& p) {
      const Observation o = evaluate_increment(objective, c, base, p);
      return Scores{o.y_o, 0.0};
    };
    SelectOptions opts;
    opts.use_stability = false;
    return select_next(c, bo_cfg, bounds, eval, rng, opts).primitive;
  }
  const auto feasible = enumerate_attachments(c, bounds);
  if (feasible.empty()) throw SaturatedError();
  if (method == Method::kRandom) return feasible[rng.index(feasible.size())];

  std::vector<Observation> observed;
  const auto pool = method == Method::kGreedy ? sample_from(feasible, bo_cfg.candidates, rng) : feasible;
  for (const auto& p : pool) observed.push_back(evaluate_increment(objective, c, base, p));
  return best_observation(observed).primitive;
}

}  // namespace

std::vector<Curve> assemble_explicit(Objective objective, Method method, int steps,
                                     std::span<const std::uint64_t> seeds, const BoConfig& bo_cfg,
                                     const Bounds& bounds) {
  if (steps < 1) throw Error("T (steps) must be >= 1");
  bo_cfg.validate();
  std::vector<std::uint64_t> run_seeds(seeds.begin(), seeds.end());
  if (method == Method::kOracle) run_seeds.assign(1, 0);

  std::vector<Curve> curves;
  for (std::uint64_t seed : run_seeds) {
    Curve curve{method, objective, seed, {}, {}};
    BoConfig cfg = bo_cfg;
    cfg.seed = seed;
    Rng rng(seed);
    Combination c{Primitive{0, 0, 0, 0}};
    double best = evaluate_objective(objective, c);
    for (int t = 0; t < steps; ++t) {
      c.push_back(pick_explicit(objective, method, c, cfg, bounds, rng));
      best = std::max(best, static_cast<double>(evaluate_objective(objective, c)));
      curve.values.push_back(best);
    }
    curve.final = std::move(c);
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::string to_string(Objective o) {
  switch (o) {
    case Objective::kHeight: return "height";
    case Objective::kWidth: return "width";
    case Objective::kDepth: return "depth";
    case Objective::kStuds: return "studs";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kBo: return "bo";
    case Method::kRandom: return "random";
    case Method::kGreedy: return "greedy";
    case Method::kOracle: return "oracle";
  }
  return "?";
}

std::optional<Objective> parse_objective(std::string_view s) {
  for (auto o : {Objective::kHeight, Objective::kWidth, Objective::kDepth, Objective::kStuds})
    if (to_string(o) == s) return o;
  return std::nullopt;
}

std::optional<Method> parse_method(std::string_view s) {
  for (auto m : {Method::kBo, Method::kRandom, Method::kGreedy, Method::kOracle})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

using Shape = std::vector<Primitive>;

Shape translate_canonical(Shape s) {
  std::sort(s.begin(), s.end());
  const Primitive first = s.front();
  for (auto& p : s) {
    p.a1 -= first.a1;
    p.a2 -= first.a2;
    p.z -= first.z;
  }
  return s;
}

// Quarter turn in plan: cell (x, y) -> (-y, x).
Primitive rotate(const Primitive& p) { return Primitive{-p.a2 - p.length2() + 1, p.a1, p.z, 1 - p.d}; }

Shape rotation_canonical(Shape s) {
  Shape best = translate_canonical(s);
  for (int k = 1; k < 4; ++k) {
    for (auto& p : s) p = rotate(p);
    best = std::min(best, translate_canonical(s));
  }
  return best;
}

}  // namespace

CountResult count_combinations(int n, CountConvention convention) {
  if (n != 2 && n != 3) throw Error("count_combinations supports n = 2 or 3");
  CountResult out;

  // Grow connected sets brick by brick. Free conventions start high enough
  // that z >= 0 never clips a shape.
  std::set<Shape> frontier;
  if (convention == CountConvention::kAnchored) {
    frontier.insert({Primitive{0, 0, 0, 0}});
  } else {
    frontier.insert({Primitive{0, 0, n, 0}});
    frontier.insert({Primitive{0, 0, n, 1}});
  }
  for (int size = 1; size < n; ++size) {
    std::set<Shape> next;
    for (const auto& s : frontier) {
      for (const auto& p : enumerate_attachments(s, Bounds::unbounded())) {
        Shape grown = s;
        grown.push_back(p);
        std::sort(grown.begin(), grown.end());
        next.insert(std::move(grown));
      }
    }
    frontier = std::move(next);
  }

  switch (convention) {
    case CountConvention::kAnchored: {
      out.convention = "anchored: distinct brick sets containing (0,0,0,0), all z >= 0";
      out.total = frontier.size();
      if (n == 2)
        for (const auto& s : frontier) {
          const auto& other = s[0] == Primitive{0, 0, 0, 0} ? s[1] : s[0];
          (other.d == 0 ? out.parallel : out.perpendicular) += 1;
        }
      break;
    }
    case CountConvention::kTranslation: {
      out.convention = "translation: connected shapes up to translation";
      std::set<Shape> classes;
      for (const auto& s : frontier) classes.insert(translate_canonical(s));
      out.total = classes.size();
      break;
    }
    case CountConvention::kRotation: {
      out.convention = "rotation: connected shapes up to translation and quarter-turn rotation";
      std::set<Shape> classes;
      for (const auto& s : frontier) classes.insert(rotation_canonical(s));
      out.total = classes.size();
      break;
    }
  }
  return out;
}

std::optional<CountConvention> parse_convention(std::string_view s) {
  if (s == "anchored") return CountConvention::kAnchored;
  if (s == "translation") return CountConvention::kTranslation;
  if (s == "rotation") return CountConvention::kRotation;
  return std::nullopt;
}

}  // namespace brickbo
