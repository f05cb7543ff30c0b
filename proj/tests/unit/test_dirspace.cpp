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

#include "dsavoid/dirspace.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

namespace ds = dsavoid::dirspace;
namespace g = dsavoid::geometry;
using dsavoid::Error;
using dsavoid::ErrorCode;
using dsavoid::Mat;
using dsavoid::Vec;
using dsavoid::vec2;
using dsavoid::vec3;
using namespace dsavoid::testing;

TEST_SUITE("dirspace") {

TEST_CASE("frame of canonical bases") {
  auto f1 = ds::make_frame(vec2(1, 0));
  CHECK((f1.basis - Mat::Identity(2, 2)).norm() <= 1e-15);
  auto f2 = ds::make_frame(vec2(0, 1));
  check_vec(f2.basis.col(0), vec2(0, 1), 0.0);
  check_vec(f2.basis.col(1), vec2(-1, 0), 0.0);
  CHECK(code_of([] { ds::make_frame(vec2(0, 0)); }) == ErrorCode::kInvalidBase);
}

TEST_CASE("frames are orthonormal with the base first") {
  std::mt19937_64 rng(1);
  for (int d : {2, 3, 4, 5, 6, 8}) {
    for (int k = 0; k < 100; ++k) {
      Vec b = random_unit(rng, d);
      auto f = ds::make_frame(b);
      CHECK((f.basis.transpose() * f.basis - Mat::Identity(d, d)).norm() <= 1e-12);
      CHECK((f.basis.col(0) - b).norm() <= 1e-15);
    }
  }
}

TEST_CASE("direction space examples") {
  auto f = ds::make_frame(vec2(1, 0));
  CHECK(ds::to_direction_space(vec2(1, 0), f).norm() == 0.0);
  Vec k = ds::to_direction_space(vec2(0, 1), f);
  CHECK(k[0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  check_vec(ds::from_direction_space(Vec::Zero(1), f), vec2(1, 0), 0.0);
  Vec kp(1);
  kp << std::numbers::pi / 2;
  check_vec(ds::from_direction_space(kp, f), f.basis.col(1), 1e-15);
  CHECK(code_of([&] { ds::to_direction_space(vec2(-1, 0), f); }) == ErrorCode::kAntipodal);
  CHECK(code_of([&] { ds::to_direction_space(vec2(-1, 1e-6), f); }) == ErrorCode::kAntipodal);
  Vec kpi(1);
  kpi << std::numbers::pi;
  CHECK(code_of([&] { ds::from_direction_space(kpi, f); }) == ErrorCode::kOutOfDomain);
}

TEST_CASE("round trip and norm preservation") {
  std::mt19937_64 rng(2);
  for (int d = 2; d <= 6; ++d) {
    for (int k = 0; k < 500; ++k) {
      auto f = ds::make_frame(random_unit(rng, d));
      Vec v = random_unit(rng, d);
      if (v.dot(f.base) < -1.0 + 1e-6) continue;
      Vec kappa = ds::to_direction_space(v, f);
      CHECK(kappa.norm() < std::numbers::pi);
      CHECK(std::abs(kappa.norm() - std::acos(std::clamp(v.dot(f.base), -1.0, 1.0))) <= 1e-7);
      Vec back = ds::from_direction_space(kappa, f);
      CHECK((back - v).norm() <= 1e-9);
      Vec rk = random_unit(rng, d - 1) * uniform(rng, 0.0, 3.1);
      CHECK(std::abs(ds::from_direction_space(rk, f).norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("weighted mean examples") {
  Vec b = vec2(1, 0);
  check_vec(ds::weighted_direction_mean({vec2(0.6, 0.8)}, {1.0}, b), vec2(0.6, 0.8), 1e-12);
  check_vec(ds::weighted_direction_mean({vec2(0, 1), vec2(0, -1)}, {0.5, 0.5}, b), b, 1e-12);
  CHECK(code_of([&] { ds::weighted_direction_mean({vec2(-1, 0)}, {1.0}, b); }) == ErrorCode::kAntipodal);
  CHECK_THROWS_AS(ds::weighted_direction_mean({vec2(0, 1), vec2(1, 1)}, {0.8, 0.8}, b), Error);
}

TEST_CASE("weighted mean stays within the triangle bound") {
  std::mt19937_64 rng(3);
  for (int d : {2, 3, 5}) {
    for (int k = 0; k < 300; ++k) {
      Vec b = random_unit(rng, d);
      auto f = ds::make_frame(b);
      int n = 1 + static_cast<int>(rng() % 4);
      std::vector<Vec> vs;
      std::vector<double> ws;
      double total = uniform(rng, 0.2, 1.0), bound = 0.0, half_bound = 0.0;
      std::vector<double> raw;
      double rs = 0.0;
      for (int i = 0; i < n; ++i) {
        raw.push_back(uniform(rng, 0.0, 1.0));
        rs += raw.back();
      }
      for (int i = 0; i < n; ++i) {
        Vec v = random_unit(rng, d);
        if (v.dot(b) < -0.99) v = b;
        vs.push_back(v);
        ws.push_back(total * raw[i] / rs);
        double kn = ds::to_direction_space(v, f).norm();
        bound += ws.back() * kn;
        half_bound = std::max(half_bound, kn);
      }
      Vec m = ds::weighted_direction_mean(vs, ws, b);
      double km = ds::to_direction_space(m, f).norm();
      CHECK(km <= bound + 1e-9);
      if (half_bound <= std::numbers::pi / 2) CHECK(km <= std::numbers::pi / 2 + 1e-12);
    }
  }
}

TEST_CASE("closest distance between two circles") {
  auto a = circle(vec2(0, 0), 1.0);
  auto b = circle(vec2(6, 0), 2.0);
  auto res = ds::closest_distance_descent(a, b);
  CHECK(res.distance == doctest::Approx(3.0).epsilon(1e-6));
  check_vec(res.point1, vec2(1, 0), 1e-4);
  check_vec(res.point2, vec2(4, 0), 1e-4);
}

TEST_CASE("closest points of mirrored shapes are mirrored") {
  auto a = ellipse(vec2(-2, 0.5), 1.2, 0.5, 0.4);
  auto b = ellipse(vec2(2, 0.5), 1.2, 0.5, -0.4);
  auto res = ds::closest_distance_descent(a, b);
  CHECK(std::abs(res.point1[0] + res.point2[0]) <= 1e-4);
  CHECK(std::abs(res.point1[1] - res.point2[1]) <= 1e-4);
}

TEST_CASE("closest distance matches brute force") {
  std::mt19937_64 rng(4);
  int tested = 0;
  while (tested < 30) {
    auto a = random_convex(rng, vec2(0, 0));
    Vec dir = random_unit(rng, 2);
    auto b = random_convex(rng, dir * uniform(rng, 1.0, 3.5));
    if (overlapping(a, b)) continue;
    ++tested;
    auto res = ds::closest_distance_descent(a.obstacle, b.obstacle);
    CHECK(std::abs(res.distance - brute_force_distance(a, b)) <= 1e-3);
  }
}

TEST_CASE("closest distance rejects overlapping shapes") {
  auto a = circle(vec2(0, 0), 1.0);
  auto b = circle(vec2(0.5, 0), 1.0);
  CHECK(code_of([&] { ds::closest_distance_descent(a, b); }) == ErrorCode::kIntersecting);
}

TEST_CASE("common reference of symmetric circles is the midpoint") {
  auto a = circle(vec2(-0.6, 0.3), 1.0);
  auto b = circle(vec2(0.6, 0.3), 1.0);
  Vec p = ds::common_reference_descent(a, b);
  check_vec(p, vec2(0, 0.3), 1e-4);
}

TEST_CASE("common reference iterates stay inside both shapes") {
  std::mt19937_64 rng(5);
  int tested = 0;
  while (tested < 40) {
    auto a = random_convex(rng, vec2(0, 0));
    auto b = random_convex(rng, random_unit(rng, 2) * uniform(rng, 0.1, 1.0));
    if (!overlapping(a, b)) continue;
    std::vector<Vec> iterates;
    Vec p = ds::common_reference_descent(a.obstacle, b.obstacle, {}, &iterates);
    ++tested;
    CHECK(std::max(g::gamma(p, a.obstacle), g::gamma(p, b.obstacle)) < 1.0);
    for (const auto& x : iterates) {
      CHECK(std::max(g::gamma(x, a.obstacle), g::gamma(x, b.obstacle)) < 1.0);
    }
  }
}

TEST_CASE("common reference matches a grid search of the barrier") {
  auto a = ellipse(vec2(-0.8, 0), 1.5, 0.6, 0.3);
  auto b = ellipse(vec2(0.8, 0.3), 1.4, 0.5, -0.6);
  const double gb = 1.1;
  auto value = [&](const Vec& x) {
    double g1 = g::gamma(x, a), g2 = g::gamma(x, b);
    if (std::max(g1, g2) >= 1.0) return std::numeric_limits<double>::infinity();
    return gb / (gb - g1) + gb / (gb - g2);
  };
  Vec best = vec2(0, 0);
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 600; ++i) {
    for (int j = 0; j <= 600; ++j) {
      Vec x = vec2(-2.5 + 5.0 * i / 600, -1.5 + 3.0 * j / 600);
      double v = value(x);
      if (v < best_v) {
        best_v = v;
        best = x;
      }
    }
  }
  Vec p = ds::common_reference_descent(a, b);
  CHECK((p - best).norm() <= 1e-2);
}

TEST_CASE("common reference finds an overlap away from the center segment") {
  // A thin horizontal and a thin vertical ellipse crossing near (1.8, 0).
  auto a = ellipse(vec2(0, 0), 2.0, 0.2);
  auto b = ellipse(vec2(1.8, 1.5), 0.2, 1.7);
  for (int i = 0; i <= 100; ++i) {
    Vec p = b.center() * (i / 100.0);
    CHECK(std::max(g::gamma(p, a), g::gamma(p, b)) >= 1.0);
  }
  Vec p = ds::common_reference_descent(a, b);
  CHECK(std::max(g::gamma(p, a), g::gamma(p, b)) < 1.0);
}

TEST_CASE("common reference rejects disjoint shapes") {
  CHECK(code_of([] {
          ds::common_reference_descent(circle(vec2(0, 0), 1.0), circle(vec2(3, 0), 1.0));
        }) == ErrorCode::kDisjoint);
}

TEST_CASE("curvature condition") {
  auto small = circle(vec2(0.5, 0), 0.5);
  auto wall = circle(vec2(0, 0), 4.0, true);
  auto rep = ds::curvature_condition(small, wall);
  CHECK(rep.skipped == 0);
  CHECK(std::abs(rep.obstacle_max) <= 1e-6);
  CHECK(std::abs(rep.boundary_min) <= 1e-6);

  auto sq = unit_square(0.0);
  auto rep_sq = ds::curvature_condition(sq, wall);
  CHECK_FALSE(rep_sq.holds);

  // Dense sampling of the literal radial derivative.
  auto el = ellipse(vec2(0, 0), 1.0, 0.5, 0.2);
  auto el_wall = ellipse(vec2(0, 0), 4.0, 3.0, 0.0, true);
  auto r = ds::curvature_condition(el, el_wall, 64);
  double omax = -1e9, bmin = 1e9;
  for (int k = 0; k < 64; ++k) {
    double theta = 2.0 * std::numbers::pi * (k + 0.5) / 64;
    for (auto* o : {&el, &el_wall}) {
      Vec p = g::boundary_at_angle(theta, *o);
      Vec n = g::free_space_normal(p + 1e-9 * p, *o);
      Vec t = vec2(-n[1], n[0]);
      double h = 1e-5;
      double c = (g::local_radius(p - h * t, *o) - g::local_radius(p + h * t, *o)) / (2 * h);
      if (o == &el) {
        omax = std::max(omax, c);
      } else {
        bmin = std::min(bmin, c);
      }
    }
  }
  CHECK(r.obstacle_max == doctest::Approx(omax).epsilon(1e-4));
  CHECK(r.boundary_min == doctest::Approx(bmin).epsilon(1e-4));
  CHECK(r.holds == (omax < bmin));
}

}  // TEST_SUITE
