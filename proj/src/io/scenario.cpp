// Copyright 2026 The dsavoid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dsavoid/io/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace dsavoid::io {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
using geometry::Obstacle;

std::string child(const std::string& ptr, std::string_view key) {
  return ptr + "/" + std::string(key);
}

std::string child(const std::string& ptr, size_t index) {
  return ptr + "/" + std::to_string(index);
}

[[noreturn]] void fail(const std::string& ptr, const std::string& message) {
  throw ScenarioError(ptr.empty() ? "/" : ptr, message);
}

// Object view that rejects keys outside the allowed set.
class Obj {
 public:
  Obj(const json& j, std::string ptr, std::initializer_list<std::string_view> allowed)
      : j_(j), ptr_(std::move(ptr)) {
    if (!j_.is_object()) fail(ptr_, "expected an object");
    for (const auto& item : j_.items()) {
      bool known = false;
      for (auto key : allowed) known = known || item.key() == key;
      if (!known) fail(child(ptr_, item.key()), "unknown key '" + item.key() + "'");
    }
  }

  bool has(std::string_view key) const { return j_.contains(key); }
  const json& at(std::string_view key) const { return j_.at(key); }
  std::string path(std::string_view key) const { return child(ptr_, key); }

  const json& required(std::string_view key) const {
    if (!has(key)) fail(ptr_, "missing required key '" + std::string(key) + "'");
    return at(key);
  }

  double number(std::string_view key, double fallback) const {
    return has(key) ? as_number(at(key), path(key)) : fallback;
  }
  double number(std::string_view key) const { return as_number(required(key), path(key)); }

  int integer(std::string_view key, int fallback) const {
    return has(key) ? as_int(at(key), path(key)) : fallback;
  }

  std::uint64_t seed(std::string_view key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_number_unsigned()) fail(path(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool flag(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_boolean()) fail(path(key), "expected a boolean");
    return at(key).get<bool>();
  }

  std::string text(std::string_view key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_string()) fail(path(key), "expected a string");
    return at(key).get<std::string>();
  }

  static double as_number(const json& v, const std::string& ptr) {
    if (!v.is_number()) fail(ptr, "expected a number");
    return v.get<double>();
  }

  static int as_int(const json& v, const std::string& ptr) {
    if (!v.is_number_integer()) fail(ptr, "expected an integer");
    return v.get<int>();
  }

 private:
  const json& j_;
  std::string ptr_;
};

Vec as_vec(const json& v, const std::string& ptr, int dim = -1) {
  if (!v.is_array()) fail(ptr, "expected an array of numbers");
  if (v.size() > static_cast<size_t>(kMaxDim)) fail(ptr, "too many components");
  if (dim >= 0 && static_cast<int>(v.size()) != dim) {
    fail(ptr, "expected " + std::to_string(dim) + " components");
  }
  Vec out(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[i] = Obj::as_number(v[i], child(ptr, i));
  return out;
}

std::vector<Vec> as_vec_list(const json& v, const std::string& ptr, int dim) {
  if (!v.is_array()) fail(ptr, "expected an array of points");
  std::vector<Vec> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(as_vec(v[i], child(ptr, i), dim));
  return out;
}

std::vector<double> as_numbers(const json& v, const std::string& ptr) {
  if (!v.is_array()) fail(ptr, "expected an array of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(Obj::as_number(v[i], child(ptr, i)));
  return out;
}

Mat as_mat(const json& v, const std::string& ptr, int dim) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim) {
    fail(ptr, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  }
  Mat m(dim, dim);
  for (int r = 0; r < dim; ++r) m.row(r) = as_vec(v[r], child(ptr, r), dim).transpose();
  return m;
}

sim::Flow as_flow(const json& v, const std::string& ptr) {
  if (v == "counter") return sim::Flow::kCounter;
  if (v == "parallel") return sim::Flow::kParallel;
  fail(ptr, "expected 'counter' or 'parallel'");
}

std::string_view flow_name(sim::Flow f) { return f == sim::Flow::kCounter ? "counter" : "parallel"; }

geometry::ObstacleShape parse_shape(const Obj& o, const std::string& ptr, int dim) {
  const json& sj = o.required("shape");
  std::string sp = o.path("shape");
  if (!sj.is_object() || !sj.contains("type") || !sj.at("type").is_string()) {
    fail(sp, "shape needs a string 'type'");
  }
  std::string type = sj.at("type").get<std::string>();
  Vec center = as_vec(o.required("center"), o.path("center"), dim);
  double margin = o.number("margin", 0.0);
  if (o.has("angle") && o.has("orientation")) fail(ptr, "give either 'angle' or 'orientation'");

  geometry::ObstacleShape shape;
  if (type == "circle") {
    Obj s(sj, sp, {"type", "radius"});
    shape = geometry::make_circle(center, s.number("radius"), margin);
  } else if (type == "ellipse") {
    Obj s(sj, sp, {"type", "semi_axes"});
    Vec axes = as_vec(s.required("semi_axes"), s.path("semi_axes"), dim);
    if (dim == 2) {
      shape = geometry::make_ellipse(center, axes, 0.0, margin);
    } else {
      shape.kind = geometry::Ellipse{axes};
      shape.center = center;
      shape.orientation = Mat::Identity(dim, dim);
      shape.margin = margin;
    }
  } else if (type == "polygon") {
    Obj s(sj, sp, {"type", "vertices"});
    if (dim != 2) fail(sp, "polygons are planar");
    shape = geometry::make_polygon(center, as_vec_list(s.required("vertices"), s.path("vertices"), 2),
                                   0.0, margin);
  } else if (type == "star") {
    Obj s(sj, sp, {"type", "radius", "amplitude", "petals", "phase"});
    if (dim != 2) fail(sp, "stars are planar");
    shape = geometry::make_star(center, s.number("radius"), s.number("amplitude", 0.0),
                                s.integer("petals", 5), s.number("phase", 0.0), margin);
  } else {
    fail(child(sp, "type"), "unknown shape type '" + type + "'");
  }

  if (o.has("angle")) {
    if (dim != 2) fail(o.path("angle"), "'angle' is planar; use 'orientation'");
    shape.orientation = geometry::rotation2(o.number("angle"));
  } else if (o.has("orientation")) {
    shape.orientation = as_mat(o.at("orientation"), o.path("orientation"), dim);
  }
  return shape;
}

Obstacle parse_obstacle(const json& j, const std::string& ptr, int dim) {
  Obj o(j, ptr,
        {"shape", "center", "angle", "orientation", "margin", "reference_point", "is_boundary",
         "power", "motion", "deformation", "gap"});
  Obstacle obs = geometry::make_obstacle(parse_shape(o, ptr, dim), o.flag("is_boundary", false),
                                         o.integer("power", 1));
  if (o.has("reference_point")) {
    obs.reference_point = as_vec(o.at("reference_point"), o.path("reference_point"), dim);
  }
  int rot = dim == 2 ? 1 : dim == 3 ? 3 : 0;
  if (o.has("motion")) {
    Obj m(o.at("motion"), o.path("motion"), {"linear", "angular"});
    if (m.has("linear")) obs.motion.linear = as_vec(m.at("linear"), m.path("linear"), dim);
    if (m.has("angular")) obs.motion.angular = as_vec(m.at("angular"), m.path("angular"), rot);
  }
  if (o.has("deformation")) {
    Obj d(o.at("deformation"), o.path("deformation"),
          {"linear", "angular", "radial_rate", "axes_rate", "repulsive"});
    auto& def = obs.deformation;
    if (d.has("linear")) def.linear = as_vec(d.at("linear"), d.path("linear"), dim);
    if (d.has("angular")) def.angular = as_vec(d.at("angular"), d.path("angular"), rot);
    def.radial_rate = d.number("radial_rate", 0.0);
    if (d.has("axes_rate")) def.axes_rate = as_vec(d.at("axes_rate"), d.path("axes_rate"), dim);
    def.repulsive = d.flag("repulsive", false);
  }
  if (o.has("gap")) {
    Obj g(o.at("gap"), o.path("gap"), {"edges"});
    auto edges = as_vec_list(g.required("edges"), g.path("edges"), dim);
    if (edges.size() != 2) fail(g.path("edges"), "expected two edge points");
    obs.gap = geometry::make_gap(edges[0], edges[1]);
  }
  return obs;
}

sim::CrowdConfig parse_crowd(const Obj& c) {
  sim::CrowdConfig cfg;
  cfg.width = c.number("width", cfg.width);
  cfg.length = c.number("length", cfg.length);
  cfg.window = c.number("window", cfg.window);
  cfg.pedestrian_radius = c.number("pedestrian_radius", cfg.pedestrian_radius);
  cfg.robot_radius = c.number("robot_radius", cfg.robot_radius);
  cfg.perceived = c.integer("perceived", cfg.perceived);
  cfg.crowd_speed = c.number("crowd_speed", cfg.crowd_speed);
  cfg.v_max = c.number("v_max", cfg.v_max);
  if (c.has("flow")) cfg.flow = as_flow(c.at("flow"), c.path("flow"));
  if (c.has("lanes")) cfg.lanes = as_numbers(c.at("lanes"), c.path("lanes"));
  cfg.jitter = c.number("jitter", cfg.jitter);
  cfg.min_gap = c.number("min_gap", cfg.min_gap);
  cfg.dt = c.number("dt", cfg.dt);
  cfg.t_max = c.number("t_max", cfg.t_max);
  return cfg;
}

sim::ComparisonConfig parse_comparison(const Obj& c) {
  sim::ComparisonConfig cfg;
  cfg.v_max = c.number("v_max", cfg.v_max);
  cfg.dt = c.number("dt", cfg.dt);
  cfg.t_max = c.number("t_max", cfg.t_max);
  if (c.has("start")) cfg.start = as_vec(c.at("start"), c.path("start"), 2);
  if (c.has("goal")) cfg.goal = as_vec(c.at("goal"), c.path("goal"), 2);
  cfg.sigma_velocity = c.number("sigma_velocity", cfg.sigma_velocity);
  cfg.sigma_axes = c.number("sigma_axes", cfg.sigma_axes);
  cfg.surface_speed_fraction = c.number("surface_speed_fraction", cfg.surface_speed_fraction);
  cfg.major_min = c.number("major_min", cfg.major_min);
  cfg.major_max = c.number("major_max", cfg.major_max);
  cfg.minor_min = c.number("minor_min", cfg.minor_min);
  cfg.minor_max = c.number("minor_max", cfg.minor_max);
  cfg.axis_min = c.number("axis_min", cfg.axis_min);
  cfg.axis_max = c.number("axis_max", cfg.axis_max);
  cfg.spawn_y = c.number("spawn_y", cfg.spawn_y);
  cfg.region_x_min = c.number("region_x_min", cfg.region_x_min);
  cfg.region_x_max = c.number("region_x_max", cfg.region_x_max);
  cfg.region_y = c.number("region_y", cfg.region_y);
  if (c.has("potential")) {
    Obj p(c.at("potential"), c.path("potential"), {"gain", "range"});
    cfg.potential.gain = p.number("gain", cfg.potential.gain);
    cfg.potential.range = p.number("range", cfg.potential.range);
  }
  return cfg;
}

sim::ArmScenario parse_arm(const Obj& a) {
  sim::ArmScenario arm;
  if (a.has("base")) arm.model.base = as_vec(a.at("base"), a.path("base"), 2);
  arm.model.base_angle = a.number("base_angle", 0.0);
  arm.model.lengths = as_numbers(a.required("lengths"), a.path("lengths"));
  std::vector<double> q = as_numbers(a.required("q"), a.path("q"));
  arm.model.q = Eigen::Map<const Eigen::VectorXd>(q.data(), static_cast<Eigen::Index>(q.size()));
  arm.model.sections = a.integer("sections", arm.model.sections);
  arm.goal = as_vec(a.required("goal"), a.path("goal"), 2);
  arm.gain = a.number("gain", arm.gain);
  arm.max_speed = a.number("max_speed", arm.max_speed);
  arm.dt = a.number("dt", arm.dt);
  arm.t_max = a.number("t_max", arm.t_max);
  arm.converge_tol = a.number("converge_tol", arm.converge_tol);
  if (a.has("weights")) {
    Obj w(a.at("weights"), a.path("weights"), {"gamma_cutoff", "link_factor"});
    arm.weights.gamma_cutoff = w.number("gamma_cutoff", arm.weights.gamma_cutoff);
    arm.weights.link_factor = w.number("link_factor", arm.weights.link_factor);
  }
  return arm;
}

std::string line_column(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// ------------------------------------------------------------- serialization

ojson from_vec(const Vec& v) {
  ojson a = ojson::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ojson from_mat(const Mat& m) {
  ojson a = ojson::array();
  for (int r = 0; r < m.rows(); ++r) a.push_back(from_vec(m.row(r).transpose()));
  return a;
}

ojson from_shape(const geometry::ObstacleShape& shape) {
  return std::visit(
      [](const auto& k) -> ojson {
        using T = std::decay_t<decltype(k)>;
        ojson s;
        if constexpr (std::is_same_v<T, geometry::Circle>) {
          s["type"] = "circle";
          s["radius"] = k.radius;
        } else if constexpr (std::is_same_v<T, geometry::Ellipse>) {
          s["type"] = "ellipse";
          s["semi_axes"] = from_vec(k.semi_axes);
        } else if constexpr (std::is_same_v<T, geometry::Polygon>) {
          s["type"] = "polygon";
          s["vertices"] = ojson::array();
          for (const auto& v : k.vertices) s["vertices"].push_back(from_vec(v));
        } else {
          s["type"] = "star";
          s["radius"] = k.radius;
          s["amplitude"] = k.amplitude;
          s["petals"] = k.petals;
          s["phase"] = k.phase;
        }
        return s;
      },
      shape.kind);
}

ojson from_obstacle(const Obstacle& obs) {
  ojson o;
  o["shape"] = from_shape(obs.shape);
  o["center"] = from_vec(obs.shape.center);
  o["orientation"] = from_mat(obs.shape.orientation);
  o["margin"] = obs.shape.margin;
  o["reference_point"] = from_vec(obs.reference_point);
  o["is_boundary"] = obs.is_boundary;
  o["power"] = obs.power;
  ojson m;
  if (obs.motion.linear.size() > 0) m["linear"] = from_vec(obs.motion.linear);
  if (obs.motion.angular.size() > 0) m["angular"] = from_vec(obs.motion.angular);
  if (!m.empty()) o["motion"] = m;
  const auto& def = obs.deformation;
  ojson d;
  if (def.linear.size() > 0) d["linear"] = from_vec(def.linear);
  if (def.angular.size() > 0) d["angular"] = from_vec(def.angular);
  if (def.radial_rate != 0.0) d["radial_rate"] = def.radial_rate;
  if (def.axes_rate.size() > 0) d["axes_rate"] = from_vec(def.axes_rate);
  if (def.repulsive) d["repulsive"] = true;
  if (!d.empty()) o["deformation"] = d;
  if (obs.gap) {
    o["gap"]["edges"] = ojson::array({from_vec(obs.gap->edge_points[0]), from_vec(obs.gap->edge_points[1])});
  }
  return o;
}

}  // namespace

sim::Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto pos = msg.find("syntax error");
    throw ScenarioError(line_column(text, e.byte > 0 ? e.byte - 1 : 0),
                        pos == std::string::npos ? msg : msg.substr(pos));
  }

  Obj root(doc, "",
           {"world", "agent", "obstacles", "modulation", "integration", "experiment", "crowd",
            "comparison", "arm", "plot"});
  sim::Scenario s;

  Obj world(root.required("world"), "/world", {"dimension", "attractor", "gain", "max_speed"});
  s.dimension = Obj::as_int(world.required("dimension"), "/world/dimension");
  if (s.dimension < 2 || s.dimension > kMaxDim) fail("/world/dimension", "must lie in [2, 8]");
  const int d = s.dimension;
  s.ds.attractor = as_vec(world.required("attractor"), "/world/attractor", d);
  s.ds.gain = world.number("gain", 1.0);
  s.ds.max_speed = world.number("max_speed", geometry::kInfinity);

  if (root.has("agent")) {
    Obj agent(root.at("agent"), "/agent", {"start", "starts", "v_max", "radius", "safe_velocity"});
    if (agent.has("start") && agent.has("starts")) fail("/agent", "give either 'start' or 'starts'");
    if (agent.has("start")) s.starts.push_back(as_vec(agent.at("start"), "/agent/start", d));
    if (agent.has("starts")) s.starts = as_vec_list(agent.at("starts"), "/agent/starts", d);
    s.limits.v_max = agent.number("v_max", 1.0);
    s.agent_radius = agent.number("radius", 0.0);
    s.safe_velocity = agent.flag("safe_velocity", false);
  }

  if (root.has("obstacles")) {
    const json& list = root.at("obstacles");
    if (!list.is_array()) fail("/obstacles", "expected an array");
    for (size_t i = 0; i < list.size(); ++i) {
      s.obstacles.push_back(parse_obstacle(list[i], child("/obstacles", i), d));
    }
  }

  if (root.has("modulation")) {
    Obj m(root.at("modulation"), "/modulation",
          {"reactivity", "repulsion", "friction", "tail_effect", "weight_power", "basis"});
    auto& p = s.modulation;
    p.reactivity = m.number("reactivity", p.reactivity);
    p.repulsion = m.number("repulsion", p.repulsion);
    p.friction = m.flag("friction", p.friction);
    p.tail_effect = m.flag("tail_effect", p.tail_effect);
    p.weight_power = m.integer("weight_power", p.weight_power);
    std::string basis = m.text("basis", "reference");
    if (basis == "reference") {
      p.basis = modulation::BasisKind::kReference;
    } else if (basis == "orthogonal") {
      p.basis = modulation::BasisKind::kOrthogonal;
    } else {
      fail("/modulation/basis", "expected 'reference' or 'orthogonal'");
    }
  }

  if (root.has("integration")) {
    Obj in(root.at("integration"), "/integration",
           {"dt", "t_max", "converge_tol", "collision_tol", "record_stride", "finish_axis",
            "finish_value"});
    auto& c = s.integration;
    c.dt = in.number("dt", c.dt);
    c.t_max = in.number("t_max", c.t_max);
    c.converge_tol = in.number("converge_tol", c.converge_tol);
    c.collision_tol = in.number("collision_tol", c.collision_tol);
    c.record_stride = in.integer("record_stride", c.record_stride);
    c.finish_axis = in.integer("finish_axis", c.finish_axis);
    c.finish_value = in.number("finish_value", c.finish_value);
  }

  Obj ex(root.required("experiment"), "/experiment", {"type", "seed", "trials", "densities", "flows"});
  if (!ex.required("type").is_string()) fail("/experiment/type", "expected a string");
  s.experiment = ex.at("type").get<std::string>();
  if (s.experiment != "field" && s.experiment != "trajectory" && s.experiment != "comparison" &&
      s.experiment != "corridor" && s.experiment != "arm") {
    fail("/experiment/type", "unknown experiment '" + s.experiment + "'");
  }
  s.seed = ex.seed("seed", 1);
  s.trials = ex.integer("trials", 1);
  if (ex.has("densities")) s.densities = as_numbers(ex.at("densities"), "/experiment/densities");
  if (ex.has("flows")) {
    const json& f = ex.at("flows");
    if (!f.is_array()) fail("/experiment/flows", "expected an array");
    for (size_t i = 0; i < f.size(); ++i) s.flows.push_back(as_flow(f[i], child("/experiment/flows", i)));
  }

  if (root.has("crowd")) {
    s.crowd = parse_crowd(Obj(root.at("crowd"), "/crowd",
                              {"width", "length", "window", "pedestrian_radius", "robot_radius",
                               "perceived", "crowd_speed", "v_max", "flow", "lanes", "jitter",
                               "min_gap", "dt", "t_max"}));
  }
  if (root.has("comparison")) {
    s.comparison = parse_comparison(
        Obj(root.at("comparison"), "/comparison",
            {"v_max", "dt", "t_max", "start", "goal", "sigma_velocity",
             "sigma_axes", "surface_speed_fraction", "major_min", "major_max", "minor_min",
             "minor_max", "axis_min", "axis_max", "spawn_y", "region_x_min", "region_x_max",
             "region_y", "potential"}));
  }
  if (root.has("arm")) {
    if (d != 2) fail("/arm", "arms are planar");
    s.arm = parse_arm(Obj(root.at("arm"), "/arm",
                          {"base", "base_angle", "lengths", "q", "sections", "goal", "gain",
                           "max_speed", "dt", "t_max", "converge_tol", "weights"}));
    s.arm->obstacles = s.obstacles;
  }
  if (root.has("plot")) {
    Obj p(root.at("plot"), "/plot", {"resolution", "lower", "upper", "streamlines"});
    sim::PlotConfig plot;
    plot.resolution = p.integer("resolution", plot.resolution);
    plot.lower = as_vec(p.required("lower"), "/plot/lower", 2);
    plot.upper = as_vec(p.required("upper"), "/plot/upper", 2);
    plot.streamlines = p.integer("streamlines", 0);
    s.plot = plot;
  }
  return s;
}

sim::Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open scenario file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const sim::Scenario& s) {
  ojson doc;
  doc["world"]["dimension"] = s.dimension;
  doc["world"]["attractor"] = from_vec(s.ds.attractor);
  doc["world"]["gain"] = s.ds.gain;
  if (std::isfinite(s.ds.max_speed)) doc["world"]["max_speed"] = s.ds.max_speed;

  ojson agent;
  agent["starts"] = ojson::array();
  for (const auto& x : s.starts) agent["starts"].push_back(from_vec(x));
  agent["v_max"] = s.limits.v_max;
  agent["radius"] = s.agent_radius;
  agent["safe_velocity"] = s.safe_velocity;
  doc["agent"] = agent;

  doc["obstacles"] = ojson::array();
  for (const auto& obs : s.obstacles) doc["obstacles"].push_back(from_obstacle(obs));

  const auto& p = s.modulation;
  doc["modulation"] = {{"reactivity", p.reactivity},
                       {"repulsion", p.repulsion},
                       {"friction", p.friction},
                       {"tail_effect", p.tail_effect},
                       {"weight_power", p.weight_power},
                       {"basis", p.basis == modulation::BasisKind::kReference ? "reference" : "orthogonal"}};

  const auto& c = s.integration;
  doc["integration"] = {{"dt", c.dt},
                        {"t_max", c.t_max},
                        {"converge_tol", c.converge_tol},
                        {"collision_tol", c.collision_tol},
                        {"record_stride", c.record_stride},
                        {"finish_axis", c.finish_axis},
                        {"finish_value", c.finish_value}};

  ojson ex;
  ex["type"] = s.experiment;
  ex["seed"] = s.seed;
  ex["trials"] = s.trials;
  ex["densities"] = s.densities;
  ex["flows"] = ojson::array();
  for (auto f : s.flows) ex["flows"].push_back(flow_name(f));
  doc["experiment"] = ex;

  if (s.crowd) {
    const auto& k = *s.crowd;
    doc["crowd"] = {{"width", k.width},
                    {"length", k.length},
                    {"window", k.window},
                    {"pedestrian_radius", k.pedestrian_radius},
                    {"robot_radius", k.robot_radius},
                    {"perceived", k.perceived},
                    {"crowd_speed", k.crowd_speed},
                    {"v_max", k.v_max},
                    {"flow", flow_name(k.flow)},
                    {"lanes", k.lanes},
                    {"jitter", k.jitter},
                    {"min_gap", k.min_gap},
                    {"dt", k.dt},
                    {"t_max", k.t_max}};
  }
  if (s.comparison) {
    const auto& k = *s.comparison;
    doc["comparison"] = {{"v_max", k.v_max},
                         {"dt", k.dt},
                         {"t_max", k.t_max},
                         {"start", from_vec(k.start)},
                         {"goal", from_vec(k.goal)},
                         {"sigma_velocity", k.sigma_velocity},
                         {"sigma_axes", k.sigma_axes},
                         {"surface_speed_fraction", k.surface_speed_fraction},
                         {"major_min", k.major_min},
                         {"major_max", k.major_max},
                         {"minor_min", k.minor_min},
                         {"minor_max", k.minor_max},
                         {"axis_min", k.axis_min},
                         {"axis_max", k.axis_max},
                         {"spawn_y", k.spawn_y},
                         {"region_x_min", k.region_x_min},
                         {"region_x_max", k.region_x_max},
                         {"region_y", k.region_y},
                         {"potential", {{"gain", k.potential.gain}, {"range", k.potential.range}}}};
  }
  if (s.arm) {
    const auto& a = *s.arm;
    std::vector<double> q(a.model.q.data(), a.model.q.data() + a.model.q.size());
    doc["arm"] = {{"base", from_vec(a.model.base)},
                  {"base_angle", a.model.base_angle},
                  {"lengths", a.model.lengths},
                  {"q", q},
                  {"sections", a.model.sections},
                  {"goal", from_vec(a.goal)},
                  {"gain", a.gain},
                  {"max_speed", a.max_speed},
                  {"dt", a.dt},
                  {"t_max", a.t_max},
                  {"converge_tol", a.converge_tol},
                  {"weights",
                   {{"gamma_cutoff", a.weights.gamma_cutoff}, {"link_factor", a.weights.link_factor}}}};
  }
  if (s.plot) {
    doc["plot"] = {{"resolution", s.plot->resolution},
                   {"lower", from_vec(s.plot->lower)},
                   {"upper", from_vec(s.plot->upper)},
                   {"streamlines", s.plot->streamlines}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace dsavoid::io
