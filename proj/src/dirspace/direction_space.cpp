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
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dsavoid/dirspace.hpp"

namespace dsavoid::dirspace {

DirectionFrame make_frame(const Vec& b) {
  const int d = static_cast<int>(b.size());
  const double len = b.norm();
  if (d < 1 || !(len > 1e-12)) throw Error(ErrorCode::kInvalidBase, "base vector is zero");
  DirectionFrame frame;
  frame.base = b / len;
  std::array<int, kMaxDim> order{};
  std::array<double, kMaxDim> ortho{};
  for (int i = 0; i < d; ++i) {
    order[i] = i;
    ortho[i] = 1.0 - frame.base[i] * frame.base[i];
  }
  std::stable_sort(order.begin(), order.begin() + d,
                   [&](int a, int c) { return ortho[a] > ortho[c]; });
  frame.basis.resize(d, d);
  frame.basis.col(0) = frame.base;
  int filled = 1;
  for (int k = 0; k < d && filled < d; ++k) {
    Vec v = Vec::Unit(d, order[k]);
    // Two passes keep the columns orthogonal to machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < filled; ++j) v -= frame.basis.col(j).dot(v) * frame.basis.col(j);
    }
    double n = v.norm();
    if (n < 1e-6) continue;
    frame.basis.col(filled++) = v / n;
  }
  if (d > 1 && frame.basis.determinant() < 0.0) frame.basis.col(d - 1) *= -1.0;
  return frame;
}

Vec to_direction_space(const Vec& v, const DirectionFrame& frame) {
  const int d = static_cast<int>(v.size());
  Vec vh = frame.basis.transpose() * v.normalized();
  if (vh[0] < -1.0 + kAntipodalTol) {
    throw Error(ErrorCode::kAntipodal, "vector is opposite to the base");
  }
  Vec kappa = Vec::Zero(d - 1);
  Vec rest = vh.tail(d - 1);
  double rn = rest.norm();
  if (rn == 0.0) return kappa;
  return std::atan2(rn, vh[0]) * rest / rn;
}

Vec from_direction_space(const Vec& kappa, const DirectionFrame& frame) {
  const int d = static_cast<int>(kappa.size()) + 1;
  double theta = kappa.norm();
  if (theta >= std::numbers::pi) throw Error(ErrorCode::kOutOfDomain, "|kappa| must be < pi");
  if (theta == 0.0) return frame.base;
  Vec local(d);
  local[0] = std::cos(theta);
  local.tail(d - 1) = std::sin(theta) * kappa / theta;
  return frame.basis * local;
}

Vec weighted_direction_mean(const std::vector<Vec>& vectors, const std::vector<double>& weights,
                            const Vec& base) {
  if (vectors.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument, "vectors and weights differ in length");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw Error(ErrorCode::kInvalidArgument, "weights must be non-negative");
    sum += w;
  }
  if (sum > 1.0 + 1e-9) throw Error(ErrorCode::kInvalidArgument, "weights sum above one");
  DirectionFrame frame = make_frame(base);
  Vec kappa = Vec::Zero(base.size() - 1);
  for (size_t i = 0; i < vectors.size(); ++i) {
    kappa += weights[i] * to_direction_space(vectors[i], frame);
  }
  // A sum of 1 + 1e-9 can push |κ| a hair past π.
  double n = kappa.norm();
  constexpr double kMax = std::numbers::pi * (1.0 - 1e-15);
  if (n >= kMax) kappa *= kMax / n;
  return from_direction_space(kappa, frame);
}

}  // namespace dsavoid::dirspace
