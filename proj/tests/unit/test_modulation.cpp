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
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dsavoid/geometry.hpp"
#include "dsavoid/modulation.hpp"
#include "support/helpers.hpp"

namespace g = dsavoid::geometry;
namespace m = dsavoid::modulation;
using dsavoid::Error;
using dsavoid::ErrorCode;
using dsavoid::Mat;
using dsavoid::Vec;
using dsavoid::vec2;
using dsavoid::vec3;
using namespace dsavoid::testing;

namespace {

g::Obstacle star_boundary() {
  return g::make_obstacle(g::make_star(vec2(0, 0), 3.0, 0.4, 5), true);
}

g::Obstacle square_boundary() {
  return g::make_obstacle(
      g::make_polygon(vec2(0.5, -0.2), {vec2(-3, -3), vec2(3, -3), vec2(3, 3), vec2(-3, 3)}, 0.3),
      true);
}

std::vector<g::Obstacle> boundary_shapes() {
  return {circle(vec2(0.2, 0.1), 2.0, true), ellipse(vec2(-0.4, 0.3), 3.0, 1.5, 0.7, true),
          square_boundary(), star_boundary()};
}

// A free-space sample around obs at gamma in [lo, hi), drawn by rays from the reference point.
Vec sample_exterior(std::mt19937_64& rng, const g::Obstacle& obs, double lo, double hi) {
  for (;;) {
    Vec dir = random_unit(rng, obs.dim());
    double scale = uniform(rng, 1.0, 4.0);
    Vec x = obs.reference_point + g::radius_along(obs.reference_point, dir, obs.shape) * scale * dir;
    double gam = g::gamma(x, obs);
    if (gam >= lo && gam < hi) return x;
  }
}

}  // namespace

TEST_SUITE("modulation") {

TEST_CASE("nominal velocity is linear with optional saturation") {
  m::NominalDS ds{vec2(1, 1), 1.0};
  check_vec(m::nominal_velocity(vec2(1, 1), ds), vec2(0, 0), 0.0);
  ds.attractor = vec2(0, 0);
  check_vec(m::nominal_velocity(vec2(2, 0), ds), vec2(-2, 0), 1e-15);
  Vec slow = m::nominal_velocity(vec2(1.5, -0.5), ds);
  ds.gain = 2.0;
  Vec fast = m::nominal_velocity(vec2(1.5, -0.5), ds);
  CHECK(fast.norm() == doctest::Approx(2.0 * slow.norm()));
  CHECK(std::abs(dsavoid::cross2(fast, slow)) < 1e-12);
  ds.max_speed = 1.0;
  Vec capped = m::nominal_velocity(vec2(10, 0), ds);
  CHECK(capped.norm() == doctest::Approx(1.0));
}

TEST_CASE("basis matrix of a centered circle is orthonormal") {
  auto obs = circle(vec2(0, 0), 1.0);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Vec x = 2.5 * random_unit(rng, 2);
    Mat e = m::basis_matrix(x, g::local_geometry(x, obs));
    CHECK((e.transpose() * e - Mat::Identity(2, 2)).norm() < 1e-12);
    CHECK(std::abs(e.col(0).dot(g::local_geometry(x, obs).normal)) == doctest::Approx(1.0));
  }
}

TEST_CASE("basis matrix is full rank outside a square") {
  auto obs = unit_square(0.4);
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 1000) {
    Vec x(2);
    x << uniform(rng, -4, 4), uniform(rng, -4, 4);
    if (g::gamma(x, obs) <= 1.0) continue;
    Mat e = m::basis_matrix(x, g::local_geometry(x, obs));
    CHECK(std::abs(e.determinant()) > 1e-9);
    ++checked;
  }
}

TEST_CASE("basis matrix rejects a tangent reference direction") {
  g::LocalGeometry geo;
  geo.gamma = 2.0;
  geo.reference_direction = vec2(1, 0);
  geo.normal = vec2(0, 1);
  geo.tangents = g::tangent_space(geo.normal);
  CHECK(code_of([&] { m::basis_matrix(vec2(2, 0), geo); }) == ErrorCode::kRankDeficient);
}

TEST_CASE("eigenvalue examples") {
  m::ModulationParams p;
  auto s = m::eigenvalues(1.0, p);
  CHECK(s.radial == 0.0);
  CHECK(s.tangent == 2.0);
  auto far = m::eigenvalues(g::kInfinity, p);
  CHECK(far.radial == 1.0);
  CHECK(far.tangent == 1.0);
  auto four = m::eigenvalues(4.0, p);
  CHECK(four.radial == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(four.tangent == doctest::Approx(1.25).epsilon(1e-15));
  p.reactivity = 2.0;
  auto reactive = m::eigenvalues(4.0, p);
  CHECK(reactive.radial == doctest::Approx(0.5));
  CHECK(code_of([&] { m::eigenvalues(0.9, p); }) == ErrorCode::kInsideObstacle);
}

TEST_CASE("repulsive radial eigenvalue") {
  m::ModulationParams p;
  const Vec r = vec2(1, 0);
  for (double gam : {1.0, 1.5, 4.0, 30.0}) {
    CHECK(m::repulsive_lambda_r(gam, vec2(-1, 0.3), r, p) ==
          doctest::Approx(m::eigenvalues(gam, p).radial));
    CHECK(m::repulsive_lambda_r(gam, vec2(0.2, 1.0), r, p) == 1.0);
    CHECK(m::repulsive_lambda_r(gam, vec2(0.0, 1.0), r, p) == 1.0);
  }
  p.repulsion = 2.0;
  CHECK(m::repulsive_lambda_r(1.0, vec2(-1, 0), r, p) == doctest::Approx(-1.0));
  CHECK(m::repulsive_lambda_r(2.0, vec2(-1, 0), r, p) == doctest::Approx(0.0));
  // Larger repulsion gives a smaller radial eigenvalue.
  m::ModulationParams p1;
  for (double gam : {1.1, 2.0, 5.0}) {
    CHECK(m::repulsive_lambda_r(gam, vec2(-1, 0), r, p) <
          m::repulsive_lambda_r(gam, vec2(-1, 0), r, p1));
  }
}

TEST_CASE("inverted obstacle is the identity at its reference point") {
  std::mt19937_64 rng(13);
  m::ModulationParams p;
  for (const auto& obs : boundary_shapes()) {
    for (int i = 0; i < 100; ++i) {
      Vec f = uniform(rng, 0.1, 5.0) * random_unit(rng, 2);
      Vec out = m::modulate_single(obs.reference_point, f, obs, p);
      CHECK((out - f).norm() <= 1e-12);
    }
  }
}

TEST_CASE("inverted obstacle modulation vanishes continuously toward the reference point") {
  std::mt19937_64 rng(17);
  m::ModulationParams p;
  for (const auto& obs : boundary_shapes()) {
    double prev = g::kInfinity;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
      double worst = 0.0;
      for (int i = 0; i < 20; ++i) {
        Vec f = random_unit(rng, 2);
        Vec x = obs.reference_point + eps * random_unit(rng, 2);
        worst = std::max(worst, (m::modulate_single(x, f, obs, p) - f).norm());
      }
      CHECK(worst <= prev);
      prev = worst;
    }
    CHECK(prev < 1e-6);
  }
}

TEST_CASE("inward velocity on the surface loses its normal component") {
  std::mt19937_64 rng(19);
  m::ModulationParams p;
  std::vector<g::Obstacle> shapes{ellipse(vec2(0, 0), 2.0, 1.0, 0.3), unit_square(0.2),
                                  circle(vec2(1, 1), 0.5)};
  for (const auto& obs : shapes) {
    for (int i = 0; i < 40; ++i) {
      Vec dir = random_unit(rng, 2);
      Vec x = obs.reference_point +
              g::radius_along(obs.reference_point, dir, obs.shape) * (1.0 + 1e-13) * dir;
      auto geo = g::local_geometry(x, obs);
      REQUIRE(geo.gamma >= 1.0);
      Vec f = -geo.normal + uniform(rng, -0.9, 0.9) * geo.tangents.col(0);
      Vec out = m::modulate_single(x, f, obs, p);
      CHECK(std::abs(out.dot(geo.normal)) < 1e-9);
    }
  }
}

TEST_CASE("far-field modulation is close to identity") {
  std::mt19937_64 rng(23);
  m::ModulationParams p;
  std::vector<g::Obstacle> shapes{ellipse(vec2(0, 0), 2.0, 1.0, 0.3), unit_square(0.2),
                                  circle(vec2(1, 1), 0.5)};
  for (const auto& obs : shapes) {
    for (int i = 0; i < 20; ++i) {
      Vec dir = random_unit(rng, 2);
      // Bisect the ray for the point with gamma = 1000.
      double lo = 1.0, hi = 1e6;
      for (int k = 0; k < 200; ++k) {
        double mid = std::sqrt(lo * hi);
        (g::gamma(obs.reference_point + mid * dir, obs) < 1e3 ? lo : hi) = mid;
      }
      Vec x = obs.reference_point + hi * dir;
      Vec f = random_unit(rng, 2);
      Vec out = m::modulate_single(x, f, obs, p);
      CHECK((out - f).norm() <= 2e-3 * f.norm());
    }
  }
}

TEST_CASE("output does not depend on the tangent completion") {
  std::mt19937_64 rng(29);
  m::ModulationParams p;
  auto obs = g::make_obstacle(g::make_ellipse(vec3(0, 0, 0), vec3(0.6, 1.0, 0.8)));
  for (int i = 0; i < 100; ++i) {
    Vec x = sample_exterior(rng, obs, 1.0, 20.0);
    Vec f = random_unit(rng, 3);
    auto geo = g::local_geometry(x, obs);
    Vec a = m::modulation_matrix(f, geo, false, p) * f;
    double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    Mat rot(2, 2);
    rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    if (i % 2) rot.col(1) *= -1.0;
    geo.tangents = geo.tangents * rot;
    Vec b = m::modulation_matrix(f, geo, false, p) * f;
    CHECK((a - b).norm() <= 1e-9);
  }
  // The planar case only admits a sign flip.
  auto sq = unit_square(0.3);
  for (int i = 0; i < 100; ++i) {
    Vec x = sample_exterior(rng, sq, 1.0, 20.0);
    Vec f = random_unit(rng, 2);
    auto geo = g::local_geometry(x, sq);
    Vec a = m::modulation_matrix(f, geo, false, p) * f;
    geo.tangents *= -1.0;
    CHECK((a - m::modulation_matrix(f, geo, false, p) * f).norm() <= 1e-9);
  }
}

TEST_CASE("no spurious zeros in free space") {
  std::mt19937_64 rng(31);
  m::ModulationParams p;
  std::vector<g::Obstacle> shapes{ellipse(vec2(0, 0), 2.0, 1.0, 0.3), unit_square(0.2),
                                  g::make_obstacle(g::make_star(vec2(0, 0), 1.5, 0.3, 4))};
  for (const auto& obs : shapes) {
    for (int i = 0; i < 300; ++i) {
      Vec x = sample_exterior(rng, obs, 1.0 + 1e-6, 50.0);
      Vec f = random_unit(rng, 2);
      CHECK(m::modulate_single(x, f, obs, p).norm() > 0.0);
    }
  }
}

TEST_CASE("orthogonal basis gives a symmetric matrix") {
  std::mt19937_64 rng(37);
  m::ModulationParams p;
  p.basis = m::BasisKind::kOrthogonal;
  auto obs = unit_square(0.5);
  for (int i = 0; i < 50; ++i) {
    Vec x = sample_exterior(rng, obs, 1.01, 10.0);
    Vec f = random_unit(rng, 2);
    Mat mm = m::modulation_matrix(f, g::local_geometry(x, obs), false, p);
    CHECK((mm - mm.transpose()).norm() < 1e-12);
  }
}

TEST_CASE("modulation matrix rejects states inside") {
  auto obs = circle(vec2(0, 0), 1.0);
  m::ModulationParams p;
  CHECK(code_of([&] { m::modulate_single(vec2(0.5, 0), vec2(1, 0), obs, p); }) ==
        ErrorCode::kInsideObstacle);
}

TEST_CASE("friction law") {
  std::mt19937_64 rng(41);
  const Vec f = vec2(3, -4);
  CHECK(m::apply_friction(vec2(1, 0), f, 2.0).norm() == doctest::Approx(2.5));
  CHECK(m::apply_friction(vec2(1, 0), f, g::kInfinity).norm() == doctest::Approx(5.0));
  CHECK(m::apply_friction(vec2(1, 0), f, 1.0).norm() == 0.0);
  CHECK(m::apply_friction(vec2(0, 0), f, 2.0).norm() == 0.0);
  for (int i = 0; i < 1000; ++i) {
    double gam = 1.0 + std::exp(uniform(rng, -8.0, 8.0));
    Vec v = uniform(rng, 0.01, 10.0) * random_unit(rng, 2);
    Vec ff = uniform(rng, 0.01, 10.0) * random_unit(rng, 2);
    Vec out = m::apply_friction(v, ff, gam);
    CHECK(std::abs(out.norm() - (1.0 - 1.0 / gam) * ff.norm()) <= 1e-12 * ff.norm());
    CHECK(std::abs(dsavoid::cross2(out, v)) <= 1e-12 * out.norm() * v.norm());
  }
}

TEST_CASE("friction through the single-obstacle pipeline") {
  std::mt19937_64 rng(43);
  m::ModulationParams p;
  p.friction = true;
  auto obs = ellipse(vec2(0, 0), 1.5, 0.7, 0.2);
  for (int i = 0; i < 200; ++i) {
    Vec x = sample_exterior(rng, obs, 1.0 + 1e-6, 30.0);
    Vec f = uniform(rng, 0.1, 3.0) * random_unit(rng, 2);
    double gam = g::gamma(x, obs);
    Vec out = m::modulate_single(x, f, obs, p);
    CHECK(std::abs(out.norm() - (1.0 - 1.0 / gam) * f.norm()) <= 1e-12 * f.norm());
  }
}

TEST_CASE("obstacle weights") {
  auto one = m::obstacle_weights({3.0});
  CHECK(one[0] == doctest::Approx(1.0));
  auto two = m::obstacle_weights({2.0, 2.0});
  CHECK(two[0] == doctest::Approx(0.5));
  CHECK(two[1] == doctest::Approx(0.5));
  double prev = 0.0;
  for (double eps : {1.0, 1e-1, 1e-3, 1e-6}) {
    auto w = m::obstacle_weights({1.0 + eps, 2.0});
    CHECK(w[0] > prev);
    CHECK(w[0] + w[1] == doctest::Approx(1.0));
    prev = w[0];
  }
  CHECK(prev > 1.0 - 1e-5);
  auto touching = m::obstacle_weights({1.0, 3.0});
  CHECK(touching[0] == 1.0);
  CHECK(touching[1] == 0.0);
  auto tie = m::obstacle_weights({1.0, 1.0, 5.0});
  CHECK(tie[0] == 0.5);
  CHECK(tie[1] == 0.5);
  CHECK(tie[2] == 0.0);
  auto far = m::obstacle_weights({g::kInfinity, 4.0});
  CHECK(far[0] == 0.0);
  CHECK(far[1] == 1.0);
}

TEST_CASE("combining a single obstacle returns its velocity") {
  Vec v = vec2(0.3, 1.7);
  check_vec(m::combine_multi(vec2(0, 0), vec2(1, 0), {v}, {1.0}), v, 0.0);
}

TEST_CASE("symmetric flanking obstacles keep the nominal direction") {
  m::ModulationParams p;
  std::vector<g::Obstacle> env{circle(vec2(0, 1.5), 1.0), circle(vec2(0, -1.5), 1.0)};
  for (double x0 : {-3.0, -1.0, 0.0, 0.7}) {
    Vec x = vec2(x0, 0.0);
    Vec f = vec2(1.0, 0.0);
    Vec out = m::modulate_dynamic(x, f, env, p);
    CHECK(std::abs(out[1]) < 1e-12);
    CHECK(out[0] > 0.0);
  }
}

TEST_CASE("combined magnitude is the weighted sum of magnitudes") {
  std::mt19937_64 rng(47);
  m::ModulationParams p;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<g::Obstacle> env;
    for (int k = 0; k < 3; ++k) {
      Vec c(2);
      c << uniform(rng, -5, 5), uniform(rng, -5, 5);
      env.push_back(ellipse(c, uniform(rng, 0.3, 1.0), uniform(rng, 0.3, 1.0),
                            uniform(rng, 0.0, 3.0)));
    }
    Vec x(2);
    bool free = false;
    while (!free) {
      x << uniform(rng, -6, 6), uniform(rng, -6, 6);
      free = true;
      for (const auto& o : env) free = free && g::gamma(x, o) > 1.0;
    }
    Vec f = random_unit(rng, 2);
    std::vector<double> gams;
    std::vector<Vec> vels;
    double expected = 0.0;
    for (const auto& o : env) {
      gams.push_back(g::gamma(x, o));
      vels.push_back(m::modulate_single(x, f, o, p));
    }
    auto w = m::obstacle_weights(gams);
    for (size_t k = 0; k < env.size(); ++k) expected += w[k] * vels[k].norm();
    Vec out = m::combine_multi(x, f, vels, w);
    CHECK(out.norm() == doctest::Approx(expected).epsilon(1e-12));
    // The static dynamic pipeline agrees.
    CHECK((m::modulate_dynamic(x, f, env, p) - out).norm() < 1e-12);
  }
}

TEST_CASE("combining at the attractor returns the linear mean") {
  Vec out = m::combine_multi(vec2(0, 0), vec2(0, 0), {vec2(0, 0), vec2(0, 0)}, {0.5, 0.5});
  CHECK(out.norm() == 0.0);
}

TEST_CASE("relative velocity of rigid and deforming obstacles") {
  auto obs = circle(vec2(1, 2), 0.5);
  check_vec(m::relative_velocity(vec2(3, 2), obs), vec2(0, 0), 0.0);

  obs.motion.angular = Vec::Constant(1, 0.7);
  check_vec(m::relative_velocity(vec2(2, 2), obs), vec2(0, 0.7), 1e-15);
  obs.motion.linear = vec2(0.2, -0.1);
  check_vec(m::relative_velocity(vec2(2, 2), obs), vec2(0.2, 0.6), 1e-15);

  auto spatial = g::make_obstacle(g::make_circle(vec3(0, 0, 0), 0.5));
  spatial.motion.angular = vec3(0, 0, 2.0);
  check_vec(m::relative_velocity(vec3(1, 0, 0), spatial), vec3(0, 2, 0), 1e-15);

  auto grow = circle(vec2(0, 0), 1.0);
  grow.deformation.radial_rate = 0.3;
  check_vec(m::relative_velocity(vec2(0, 2), grow), vec2(0, 0.3), 1e-12);
  grow.deformation.repulsive = true;
  check_vec(m::relative_velocity(vec2(0, 2), grow), vec2(0, 0.3), 1e-12);
  grow.deformation.radial_rate = -0.3;
  check_vec(m::relative_velocity(vec2(0, 2), grow), vec2(0, 0), 0.0);
  grow.deformation.repulsive = false;
  check_vec(m::relative_velocity(vec2(0, 2), grow), vec2(0, -0.3), 1e-12);
}

TEST_CASE("ellipse axis growth moves the surface point proportionally") {
  auto obs = ellipse(vec2(0, 0), 2.0, 1.0);
  obs.deformation.axes_rate = vec2(0.4, 0.0);
  // Boundary point (2, 0) moves with the semi-axis rate.
  check_vec(m::relative_velocity(vec2(5, 0), obs), vec2(0.4, 0), 1e-12);
  check_vec(m::relative_velocity(vec2(0, 5), obs), vec2(0, 0), 1e-12);
}

TEST_CASE("translating obstacle pushes a resting agent on its surface") {
  std::mt19937_64 rng(53);
  m::ModulationParams p;
  for (int i = 0; i < 100; ++i) {
    auto obs = circle(vec2(0, 0), 1.0);
    obs.motion.linear = uniform(rng, 0.1, 1.0) * random_unit(rng, 2);
    Vec dir = random_unit(rng, 2);
    Vec x = (1.0 + 1e-12) * dir;
    Vec out = m::modulate_dynamic(x, vec2(0, 0), {obs}, p);
    CHECK(out.dot(dir) >= obs.motion.linear.dot(dir) - 1e-9);
  }
}

TEST_CASE("moving obstacle may move the agent at its attractor") {
  m::ModulationParams p;
  auto obs = circle(vec2(1.5, 0), 1.0);
  obs.motion.linear = vec2(-0.5, 0);
  Vec out = m::modulate_dynamic(vec2(0, 0), vec2(0, 0), {obs}, p);
  CHECK(out.norm() > 0.0);
}

TEST_CASE("safe velocity branches") {
  g::LocalGeometry geo;
  geo.gamma = 1.0;
  geo.normal = vec2(1, 0);
  geo.reference_direction = vec2(1, 0);
  geo.tangents = g::tangent_space(geo.normal);
  m::AgentLimits lim{1.0};

  Vec slow = vec2(0.3, 0.4);
  check_vec(m::safe_velocity(slow, geo, vec2(0.2, 0), lim), slow, 0.0);

  Vec fast = vec2(2.0, 1.0);
  Vec scaled = m::safe_velocity(fast, geo, vec2(0.2, 0), lim);
  CHECK(scaled.norm() == doctest::Approx(1.0));
  CHECK(std::abs(dsavoid::cross2(scaled, fast)) < 1e-12);

  Vec critical = m::safe_velocity(vec2(0.0, 3.0), geo, vec2(0.6, 0.1), lim);
  CHECK(critical.dot(geo.normal) == doctest::Approx(0.6));
  CHECK(critical.norm() == doctest::Approx(1.0));
  CHECK(critical[1] > 0.0);

  CHECK(code_of([&] { m::safe_velocity(fast, geo, vec2(1.0, 0), lim); }) ==
        ErrorCode::kObstacleTooFast);
  CHECK(code_of([&] { m::safe_velocity(fast, geo, vec2(0, 0), m::AgentLimits{0.0}); }) ==
        ErrorCode::kInvalidArgument);

  // Without a direction to crop the agent follows the obstacle, clamped to the limit.
  check_vec(m::safe_velocity(vec2(0, 0), geo, vec2(0.3, 0.4), lim), vec2(0.3, 0.4), 0.0);
  Vec rest = m::safe_velocity(vec2(0, 0), geo, vec2(0.6, 1.6), lim);
  CHECK(rest.norm() == doctest::Approx(1.0));
}

TEST_CASE("safe velocity keeps the moving-frame surface condition") {
  std::mt19937_64 rng(59);
  m::ModulationParams p;
  m::AgentLimits lim{1.0};
  for (int i = 0; i < 300; ++i) {
    auto obs = ellipse(vec2(0, 0), uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0),
                       uniform(rng, 0.0, 3.0));
    obs.motion.linear = uniform(rng, 0.0, 0.8) * random_unit(rng, 2);
    Vec dir = random_unit(rng, 2);
    Vec x = g::radius_along(obs.reference_point, dir, obs.shape) * (1.0 + 1e-12) * dir;
    Vec f = uniform(rng, 0.0, 3.0) * random_unit(rng, 2);
    auto res = m::evaluate_dynamic(x, f, {obs}, p);
    Vec rel = m::relative_velocity(x, obs);
    Vec n = res.dominant_geometry.normal;
    if (rel.dot(n) >= lim.v_max) continue;
    Vec safe = m::safe_velocity(res.velocity, res.dominant_geometry, rel, lim);
    CHECK((safe - rel).dot(n) >= -1e-9);
    CHECK(safe.norm() <= lim.v_max + 1e-12);
  }
}

TEST_CASE("parameter validation") {
  m::ModulationParams p;
  CHECK_NOTHROW(m::validate(p));
  p.reactivity = 0.0;
  CHECK(code_of([&] { m::validate(p); }) == ErrorCode::kInvalidArgument);
  p = {};
  p.repulsion = 0.5;
  CHECK(code_of([&] { m::validate(p); }) == ErrorCode::kInvalidArgument);
  p = {};
  p.weight_power = 0;
  CHECK(code_of([&] { m::validate(p); }) == ErrorCode::kInvalidArgument);
}

}  // TEST_SUITE
