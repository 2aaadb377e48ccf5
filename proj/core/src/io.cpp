#include "brickbo/io.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "brickbo/error.hpp"

namespace brickbo {

using nlohmann::json;

namespace {

json brick_json(const Primitive& p) { return json::array({p.a1, p.a2, p.z, p.d}); }

json bricks_json(std::span<const Primitive> bricks) {
  json arr = json::array();
  for (const auto& p : bricks) arr.push_back(brick_json(p));
  return arr;
}

Primitive brick_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error("brick must be [a1, a2, z, d]");
  for (const auto& v : j)
    if (!v.is_number_integer()) throw Error("brick coordinates must be integers");
  Primitive p{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
  if (!p.valid()) throw Error("brick needs z >= 0 and d in {0, 1}");
  return p;
}

Combination bricks_from(const json& j) {
  if (!j.is_array()) throw Error("bricks must be an array");
  Combination out;
  for (const auto& b : j) out.push_back(brick_from(b));
  return out;
}

Combination centers_from(const json& j) {
  if (!j.is_array()) throw Error("centers must be an array");
  Combination out;
  for (const auto& b : j) {
    if (!b.is_array() || b.size() != 4 || !b[0].is_number() || !b[1].is_number() || !b[2].is_number_integer() ||
        !b[3].is_number_integer())
      throw Error("center must be [c1, c2, z, d]");
    const Primitive p = Primitive::from_center(b[0].get<double>(), b[1].get<double>(), b[2].get<int>(), b[3].get<int>());
    if (!p.valid()) throw Error("brick needs z >= 0 and d in {0, 1}");
    out.push_back(p);
  }
  return out;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string target_to_json(const TargetShape& target) {
  json cells = json::array();
  for (const auto& c : target.cells()) cells.push_back(json::array({c.i, c.j, c.k}));
  json doc{{"extents", target.extents()}, {"cells", std::move(cells)}};
  return doc.dump() + "\n";
}

TargetShape target_from_json(std::string_view text) {
  const json doc = parse(text);
  if (!doc.is_object() || !doc.contains("extents") || !doc.contains("cells"))
    throw Error("target needs \"extents\" and \"cells\"");
  const auto& ext = doc["extents"];
  if (!ext.is_array() || ext.size() != 3) throw Error("extents must be [m1, m2, m3]");
  try {
    std::vector<Cell> cells;
    for (const auto& c : doc["cells"]) {
      if (!c.is_array() || c.size() != 3) throw Error("cell must be [i, j, k]");
      cells.push_back(Cell{c[0].get<int>(), c[1].get<int>(), c[2].get<int>()});
    }
    return TargetShape({ext[0].get<int>(), ext[1].get<int>(), ext[2].get<int>()}, cells);
  } catch (const json::exception& e) {
    throw Error(std::string("bad target: ") + e.what());
  }
}

std::string combination_to_json(std::span<const Primitive> bricks) {
  return json{{"bricks", bricks_json(bricks)}}.dump() + "\n";
}

Combination combination_from_json(std::string_view text) {
  const json doc = parse(text);
  if (doc.is_array()) return bricks_from(doc);
  if (doc.contains("bricks")) return bricks_from(doc["bricks"]);
  if (doc.contains("centers")) return centers_from(doc["centers"]);
  if (doc.contains("final")) return bricks_from(doc["final"]);
  throw Error("no bricks in document");
}

std::string instance_to_json_line(const ShapeInstance& inst) {
  json doc{{"class", std::string(to_string(inst.label))}, {"bricks", bricks_json(inst.bricks)}};
  return doc.dump();
}

ShapeInstance instance_from_json_line(std::string_view line) {
  const json doc = parse(line);
  if (!doc.is_object() || !doc.contains("class") || !doc["class"].is_string())
    throw Error("dataset line needs a \"class\" string");
  const auto label = parse_class(doc["class"].get<std::string>());
  if (!label) throw Error("unknown class \"" + doc["class"].get<std::string>() + "\"");
  ShapeInstance inst;
  inst.label = *label;
  if (doc.contains("bricks"))
    inst.bricks = bricks_from(doc["bricks"]);
  else if (doc.contains("centers"))
    inst.bricks = centers_from(doc["centers"]);
  else
    throw Error("dataset line needs \"bricks\" or \"centers\"");
  return inst;
}

std::string trace_to_json(const AssemblyTrace& trace, const BoConfig& bo, const StabilityConfig& st) {
  const auto& a = trace.config;
  json config{
      {"assembly",
       {{"steps", a.steps},
        {"rollback_window", a.rollback_window},
        {"rollback_threshold", a.rollback_threshold},
        {"rollback_mode", a.rollback_mode == RollbackMode::kShortfall ? "shortfall" : "literal"},
        {"max_repeats", a.max_repeats},
        {"initial", bricks_json(a.initial)}}},
      {"bo",
       {{"v", bo.initial},
        {"q", bo.candidates},
        {"zeta", bo.acquisition_samples},
        {"time_budget", bo.time_budget_seconds ? json(*bo.time_budget_seconds) : json(nullptr)},
        {"gamma0", bo.gamma0},
        {"gamma1", bo.gamma1},
        {"lambda_o", {bo.lambda_o_min, bo.lambda_o_max}},
        {"lambda_s", {bo.lambda_s_min, bo.lambda_s_max}},
        {"gp_restarts", bo.gp_restarts},
        {"seed", bo.seed}}},
      {"stability", {{"perturbation", st.perturbation}, {"w_margin", st.w_margin}, {"w_disconnect", st.w_disconnect}}},
  };
  json steps = json::array();
  for (const auto& s : trace.steps) {
    json obs = json::array();
    for (const auto& o : s.observations) obs.push_back({{"brick", brick_json(o.primitive)}, {"y_o", o.y_o}, {"y_s", o.y_s}});
    steps.push_back({{"t", s.t},
                     {"brick", brick_json(s.brick)},
                     {"y_o", s.y_o},
                     {"y_s", s.y_s},
                     {"observations", std::move(obs)},
                     {"rollback", s.rollback}});
  }
  json doc{{"config", std::move(config)},
           {"steps", std::move(steps)},
           {"final", bricks_json(trace.final)},
           {"status", trace.status == AssemblyStatus::kComplete ? "complete" : "saturated"}};
  return doc.dump(1) + "\n";
}

AssemblyTrace trace_from_json(std::string_view text) {
  const json doc = parse(text);
  AssemblyTrace trace;
  try {
    const auto& a = doc.at("config").at("assembly");
    trace.config.steps = a.at("steps").get<int>();
    trace.config.rollback_window = a.at("rollback_window").get<int>();
    trace.config.rollback_threshold = a.at("rollback_threshold").get<double>();
    trace.config.rollback_mode =
        a.at("rollback_mode").get<std::string>() == "literal" ? RollbackMode::kLiteral : RollbackMode::kShortfall;
    trace.config.max_repeats = a.at("max_repeats").get<int>();
    trace.config.initial = bricks_from(a.at("initial"));
    // The removed bricks are implied: a rollback drops the newest window.
    Combination c = trace.config.initial;
    for (const auto& s : doc.at("steps")) {
      StepRecord rec;
      rec.t = s.at("t").get<int>();
      rec.brick = brick_from(s.at("brick"));
      rec.y_o = s.at("y_o").get<double>();
      rec.y_s = s.at("y_s").get<double>();
      rec.rollback = s.at("rollback").get<bool>();
      for (const auto& o : s.at("observations"))
        rec.observations.push_back({brick_from(o.at("brick")), o.at("y_o").get<double>(), o.at("y_s").get<double>()});
      c.push_back(rec.brick);
      if (rec.rollback)
        for (int k = 0; k < trace.config.rollback_window && !c.empty(); ++k) {
          rec.removed.push_back(c.back());
          c.pop_back();
        }
      trace.steps.push_back(std::move(rec));
    }
    trace.final = bricks_from(doc.at("final"));
    trace.status = doc.value("status", std::string("complete")) == "saturated" ? AssemblyStatus::kSaturated
                                                                               : AssemblyStatus::kComplete;
  } catch (const json::exception& e) {
    throw Error(std::string("bad trace: ") + e.what());
  }
  return trace;
}

std::string curves_to_csv(std::span<const Curve> curves) {
  std::ostringstream out;
  out << "method,objective,seed,step,value\n";
  for (const auto& c : curves)
    for (std::size_t t = 0; t < c.values.size(); ++t)
      out << to_string(c.method) << ',' << to_string(c.objective) << ',' << c.seed << ',' << t + 1 << ','
          << fmt(c.values[t]) << '\n';
  return out.str();
}

std::string summary_to_csv(std::span<const Curve> curves) {
  std::map<std::tuple<int, int, std::size_t>, std::vector<double>> groups;
  for (const auto& c : curves)
    for (std::size_t t = 0; t < c.values.size(); ++t)
      groups[{static_cast<int>(c.method), static_cast<int>(c.objective), t + 1}].push_back(c.values[t]);
  std::ostringstream out;
  out << "method,objective,step,n,mean,halfwidth\n";
  for (const auto& [key, values] : groups) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double half = 1.96 * std::sqrt(var / static_cast<double>(values.size()));
    out << to_string(static_cast<Method>(std::get<0>(key))) << ',' << to_string(static_cast<Objective>(std::get<1>(key)))
        << ',' << std::get<2>(key) << ',' << values.size() << ',' << fmt(mean) << ',' << fmt(half) << '\n';
  }
  return out.str();
}

std::string stats_to_csv(std::span<const ClassStats> rows) {
  std::ostringstream out;
  out << "class,count,mean,std\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.1f,%.1f", r.count, r.mean, r.stddev);
    out << to_string(r.label) << ',' << buf << '\n';
  }
  return out.str();
}

}  // namespace brickbo
