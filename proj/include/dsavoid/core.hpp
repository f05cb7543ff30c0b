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
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsavoid {

// Largest state dimension supported. Vectors carry their size at runtime
// but never allocate, which keeps the per-evaluation cost flat.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxDim, kMaxDim>;

enum class ErrorCode {
  kInvalidArgument,
  kUndefinedDirection,
  kDegenerateShape,
  kInsideObstacle,
  kRankDeficient,
  kAntipodal,
  kOutOfDomain,
  kInvalidBase,
  kNondifferentiable,
  kIntersecting,
  kDisjoint,
  kNoConvergence,
  kCollided,
  kObstacleTooFast,
  kUnsupportedDimension,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (and tests) can branch on the condition rather than the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kUndefinedDirection: return "undefined-direction";
    case ErrorCode::kDegenerateShape: return "degenerate-shape";
    case ErrorCode::kInsideObstacle: return "inside-obstacle";
    case ErrorCode::kRankDeficient: return "rank-deficient";
    case ErrorCode::kAntipodal: return "antipodal";
    case ErrorCode::kOutOfDomain: return "out-of-domain";
    case ErrorCode::kInvalidBase: return "invalid-base";
    case ErrorCode::kNondifferentiable: return "nondifferentiable";
    case ErrorCode::kIntersecting: return "intersecting";
    case ErrorCode::kDisjoint: return "disjoint";
    case ErrorCode::kNoConvergence: return "no-convergence";
    case ErrorCode::kCollided: return "collided";
    case ErrorCode::kObstacleTooFast: return "obstacle-too-fast";
    case ErrorCode::kUnsupportedDimension: return "unsupported-dimension";
  }
  return "unknown";
}

inline Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

// Planar cross product (z component of the 3-D cross product).
inline double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

// Angular velocity ω applied to a lever arm: ω × r. In 2-D ω is a scalar
// (size-1 vector); in 3-D it is a 3-vector. Other dimensions admit no rotation.
Vec angular_cross(const Vec& omega, const Vec& lever);

}  // namespace dsavoid
