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

#include "dsavoid/arm.hpp"
#include "dsavoid/sim.hpp"
#include "support/helpers.hpp"

namespace a = dsavoid::arm;
namespace g = dsavoid::geometry;
namespace m = dsavoid::modulation;
using dsavoid::ErrorCode;
using dsavoid::Vec;
using dsavoid::vec2;
using namespace dsavoid::testing;

namespace {

constexpr double kPi = std::numbers::pi;

a::ArmModel make_arm(std::vector<double> lengths, std::vector<double> q, Vec base = vec2(0, 0)) {
  a::ArmModel model;
  model.base = base;
  model.lengths = std::move(lengths);
  model.q = Eigen::Map<Eigen::VectorXd>(q.data(), static_cast<Eigen::Index>(q.size()));
  return model;
}

a::ArmModel random_arm(std::mt19937_64& rng, int links) {
  std::vector<double> lengths, q;
  for (int l = 0; l < links; ++l) {
    lengths.push_back(uniform(rng, 0.3, 1.5));
    q.push_back(uniform(rng, -kPi, kPi));
  }
  return make_arm(lengths, q, vec2(uniform(rng, -1, 1), uniform(rng, -1, 1)));
}

}  // namespace

TEST_SUITE("arm") {

TEST_CASE("forward kinematics of straight and rotated chains") {
  auto straight = a::forward_kinematics(make_arm({1, 1}, {0, 0}, vec2(0.5, -1)));
  check_vec(straight.joints.back(), vec2(2.5, -1), 1e-15);
  auto up = a::forward_kinematics(make_arm({1, 1}, {kPi / 2, 0}));
  check_vec(up.joints.back(), vec2(0, 2), 1e-15);
  auto bent = a::forward_kinematics(make_arm({1, 1}, {0, kPi / 2}));
  check_vec(bent.joints.back(), vec2(1, 1), 1e-15);
}

TEST_CASE("section points are evenly spaced along each link") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto model = random_arm(rng, 3);
    model.sections = 1 + trial % 4;
    auto poses = a::forward_kinematics(model);
    REQUIRE(poses.sections.size() == 3u);
    for (int l = 0; l < 3; ++l) {
      const Vec& root = poses.joints[l];
      const Vec& tip = poses.joints[l + 1];
      CHECK((tip - root).norm() == doctest::Approx(model.lengths[l]));
      REQUIRE(poses.sections[l].size() == static_cast<size_t>(model.sections + 1));
      for (int s = 0; s <= model.sections; ++s) {
        double frac = static_cast<double>(s) / model.sections;
        check_vec(poses.sections[l][s], root + frac * (tip - root), 1e-12);
      }
    }
  }
}

TEST_CASE("single-link Jacobian at the tip") {
  auto model = make_arm({1}, {0});
  auto j = a::jacobian_position(model, 1, vec2(1, 0));
  CHECK(j(0, 0) == doctest::Approx(0.0));
  CHECK(j(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("Jacobian matches finite differences of the kinematics") {
  std::mt19937_64 rng(5);
  const double h = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    auto model = random_arm(rng, 3);
    int link = 1 + trial % 3;
    int s = 1 + trial % model.sections;
    auto poses = a::forward_kinematics(model);
    Vec p = poses.sections[link - 1][s];
    auto j = a::jacobian_position(model, link, p);
    Eigen::VectorXd qdot(link);
    for (int i = 0; i < link; ++i) qdot[i] = uniform(rng, -1, 1);
    auto plus = model, minus = model;
    plus.q.head(link) += h * qdot;
    minus.q.head(link) -= h * qdot;
    Vec fd = (a::forward_kinematics(plus).sections[link - 1][s] -
              a::forward_kinematics(minus).sections[link - 1][s]) / (2 * h);
    CHECK((Vec(j * qdot) - fd).norm() < 1e-6);
  }
}

TEST_CASE("pseudo-inverse of a straight arm gives the minimum-norm command") {
  auto model = make_arm({1, 1}, {0, 0});
  auto j = a::jacobian_position(model, 2, vec2(2, 0));
  auto pinv = a::pseudo_inverse(j);
  // Radial motion is unreachable: least squares gives zero.
  Eigen::VectorXd radial = pinv * Eigen::Vector2d(1, 0);
  CHECK(radial.norm() < 1e-12);
  Eigen::VectorXd lateral = pinv * Eigen::Vector2d(0, 1);
  CHECK(lateral[0] == doctest::Approx(0.4));
  CHECK(lateral[1] == doctest::Approx(0.2));
  CHECK((j * pinv * j - j).norm() < 1e-12);
  CHECK((pinv * j * pinv - pinv).norm() < 1e-12);
}

TEST_CASE("danger field is the minimum gamma") {
  std::vector<g::Obstacle> env{circle(vec2(0, 0), 1.0), circle(vec2(5, 0), 1.0)};
  CHECK(a::gamma_danger(vec2(2, 0), {env[0]}) == doctest::Approx(g::gamma(vec2(2, 0), env[0])));
  CHECK(a::gamma_danger(vec2(0, 1), env) == doctest::Approx(1.0));
  CHECK(a::gamma_danger(vec2(3.5, 0), env) ==
        doctest::Approx(std::min(g::gamma(vec2(3.5, 0), env[0]), g::gamma(vec2(3.5, 0), env[1]))));
  CHECK(std::isinf(a::gamma_danger(vec2(3.5, 0), {})));
}

TEST_CASE("gamma weight") {
  a::ArmWeightParams p;
  CHECK(a::gamma_weight(p.gamma_cutoff, p) == 0.0);
  CHECK(a::gamma_weight(10.0, p) == 0.0);
  CHECK(a::gamma_weight((p.gamma_cutoff + 1.0) / 2.0, p) == doctest::Approx(1.0));
  double prev = 0.0;
  for (double eps : {1e-1, 1e-3, 1e-6}) {
    double w = a::gamma_weight(1.0 + eps, p);
    CHECK(w > prev);
    prev = w;
  }
  CHECK(prev > 1e6);
  CHECK(code_of([&] { a::gamma_weight(1.0, p); }) == ErrorCode::kCollided);
}

TEST_CASE("link weights normalize only above one") {
  a::ArmWeightParams p;
  Eigen::VectorXd qg(2);
  qg << 1.0, 1.0;
  auto zero = a::link_weights(qg, {{0, 0, 0}, {0, 0, 0}}, p);
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);
  // Raw weights 0.5 * 0.2 and 1.0 * 0.3 sum to 0.4.
  auto small = a::link_weights(qg, {{0.2, 0.1, 0}, {0, 0.3, 0}}, p);
  CHECK(small[0] == doctest::Approx(0.1));
  CHECK(small[1] == doctest::Approx(0.3));
  // Raw weights 1 and 3 sum to 4.
  auto big = a::link_weights(qg, {{2.0, 0, 0}, {0, 0, 3.0}}, p);
  CHECK(big[0] + big[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(big[0] == doctest::Approx(0.25));
  qg << 0.0, -2.0;
  auto still = a::link_weights(qg, {{5, 5, 5}, {0.1, 0, 0}}, p);
  CHECK(still[0] == 0.0);
  CHECK(still[1] == doctest::Approx(0.2));
}

TEST_CASE("section weights") {
  auto single = a::section_weights({0, 2.5, 0});
  CHECK(single[1] == 1.0);
  CHECK(single[0] == 0.0);
  auto equal = a::section_weights({1, 1, 1});
  CHECK(equal[0] == doctest::Approx(1.0 / 6.0));
  CHECK(equal[1] == doctest::Approx(2.0 / 6.0));
  CHECK(equal[2] == doctest::Approx(3.0 / 6.0));
  auto uniform_w = a::section_weights({0, 0, 0, 0});
  for (double w : uniform_w) CHECK(w == 0.25);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> d(4);
    for (double& x : d) x = uniform(rng, 0, 5);
    double sum = 0.0;
    for (double w : a::section_weights(d)) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("link avoidance velocities") {
  const Vec root = vec2(0, 0);
  std::vector<Vec> pts{vec2(0.5, 0), vec2(1, 0)};
  auto rigid = a::link_avoidance_velocities({vec2(0.3, -0.2), vec2(0.3, -0.2)}, {0.4, 0.6}, pts,
                                            root);
  check_vec(rigid.linear, vec2(0.3, -0.2), 1e-15);
  CHECK(rigid.angular == 0.0);

  auto spin = a::link_avoidance_velocities({vec2(0, -1), vec2(0, 1)}, {0.5, 0.5}, pts, root);
  check_vec(spin.linear, vec2(0, 0), 1e-15);
  // 0.5 * (0.5 * -1) + 0.5 * (1 * 1)
  CHECK(spin.angular == doctest::Approx(0.25));

  auto first = a::link_avoidance_velocities({vec2(1, 2), vec2(-3, 4)}, {1.0, 0.0}, pts, root);
  check_vec(first.linear, vec2(1, 2), 0.0);
}

TEST_CASE("far from obstacles the command is the goal command") {
  std::mt19937_64 rng(11);
  m::NominalDS ds{vec2(1.0, 1.5)};
  for (int trial = 0; trial < 30; ++trial) {
    auto model = random_arm(rng, 3);
    std::vector<g::Obstacle> env{circle(vec2(30, 30), 1.0)};
    auto jc = a::joint_control(model, env, ds);
    CHECK(jc.min_gamma >= a::ArmWeightParams{}.gamma_cutoff);
    CHECK(jc.qdot == jc.qdot_goal);
    CHECK(jc.weight_budget == 0.0);
  }
}

TEST_CASE("goal command follows the modulated end-effector velocity") {
  std::mt19937_64 rng(13);
  m::NominalDS ds{vec2(0.5, 1.0)};
  std::vector<g::Obstacle> env{circle(vec2(-2, 2), 0.5)};
  for (int trial = 0; trial < 20; ++trial) {
    auto model = random_arm(rng, 3);
    auto poses = a::forward_kinematics(model);
    if (a::gamma_danger(poses.joints.back(), env) <= 1.0) continue;
    auto jc = a::joint_control(model, env, ds);
    auto j = a::jacobian_position(model, 3, poses.joints.back());
    Vec ee = poses.joints.back();
    Vec want = m::modulate_dynamic(ee, m::nominal_velocity(ee, ds), env);
    CHECK((Vec(j * jc.qdot_goal) - want).norm() < 1e-9);
  }
}

TEST_CASE("weight budget stays within one") {
  std::mt19937_64 rng(17);
  m::NominalDS ds{vec2(0, 2.5)};
  int evaluated = 0;
  while (evaluated < 300) {
    auto model = random_arm(rng, 3);
    std::vector<g::Obstacle> env;
    for (int k = 0; k < 2; ++k) {
      env.push_back(ellipse(vec2(uniform(rng, -3, 3), uniform(rng, -3, 3)), uniform(rng, 0.2, 0.8),
                            uniform(rng, 0.2, 0.8), uniform(rng, 0, kPi)));
    }
    auto poses = a::forward_kinematics(model);
    bool free = a::gamma_danger(poses.joints.back(), env) > 1.0;
    for (const auto& link : poses.sections) {
      for (size_t s = 1; s < link.size(); ++s) free = free && a::gamma_danger(link[s], env) > 1.0;
    }
    if (!free) continue;
    auto jc = a::joint_control(model, env, ds);
    CHECK(jc.weight_budget >= 0.0);
    CHECK(jc.weight_budget <= 1.0 + 1e-12);
    ++evaluated;
  }
}

TEST_CASE("closest section dominates as it approaches a surface") {
  m::NominalDS ds{vec2(-1, 2)};
  auto model = make_arm({1, 1}, {0.3, 0.6});
  const Vec tip = a::forward_kinematics(model).joints.back();
  const Vec center = tip + vec2(1, -1).normalized();
  double prev = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
    // The tip sits 1 from the center, just outside the circle.
    std::vector<g::Obstacle> env{circle(center, 1.0 - eps)};
    auto jc = a::joint_control(model, env, ds);
    double dominant = jc.link_weights[1] * jc.section_weights[1].back();
    CHECK(dominant > prev);
    prev = dominant;
  }
  CHECK(prev > 0.99);
}

TEST_CASE("collided section point propagates") {
  auto model = make_arm({1, 1}, {0, 0});
  std::vector<g::Obstacle> env{circle(vec2(1.5, 0), 0.3)};
  CHECK(code_of([&] { a::joint_control(model, env, m::NominalDS{vec2(0, 2)}); }) ==
        ErrorCode::kCollided);
}

TEST_CASE("model validation") {
  CHECK_NOTHROW(a::validate(make_arm({1, 1}, {0, 0})));
  CHECK(code_of([] { a::validate(make_arm({}, {})); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { a::validate(make_arm({1, -1}, {0, 0})); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { a::validate(make_arm({1, 1}, {0})); }) == ErrorCode::kInvalidArgument);
  a::ArmWeightParams p;
  p.gamma_cutoff = 1.0;
  CHECK(code_of([&] { a::validate(p); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("two-link and three-link scenarios reach the goal without contact") {
  for (const auto& scenario : {dsavoid::sim::arm_scenario_two_link(),
                               dsavoid::sim::arm_scenario_three_link()}) {
    auto res = dsavoid::sim::simulate_arm(scenario);
    CHECK(res.converged);
    CHECK_FALSE(res.collided);
    CHECK(res.min_gamma > 1.0);
    CHECK(res.final_error < 1e-2);
    CHECK(res.max_budget <= 1.0 + 1e-12);
  }
}

}  // TEST_SUITE
