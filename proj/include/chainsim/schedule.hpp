// Copyright 2026 The chainsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chainsim {

/// Differentiable map t -> (w_1..w_Q) with Σ_i w_i(t) = 1 and w_i(t) >= 0
/// over [0, horizon]. Four kinds:
///   constant              w(t) = w
///   linear-interpolation  w(t) = w0 + (w1 - w0) t/T between two prob. vectors
///   clamped-adiabatic     2 nodes, w1(t) = δ + (1-2δ)(1 - t/T)
///   tabulated             per-node Catmull-Rom cubic Hermite through knots
/// Tabulated interpolation reproduces constants exactly, so columns that sum
/// to 1 at every knot sum to 1 everywhere.
class WeightSchedule {
 public:
  enum class Kind { constant, linear_interpolation, clamped_adiabatic, tabulated };

  static WeightSchedule constant(Eigen::VectorXd w, double horizon);
  static WeightSchedule linear(Eigen::VectorXd w0, Eigen::VectorXd w1, double horizon);
  static WeightSchedule clamped_adiabatic(double delta, double horizon);
  /// knots: strictly increasing times spanning [0, horizon]; values: one row
  /// per knot, one column per node.
  static WeightSchedule tabulated(Eigen::VectorXd knots, Eigen::MatrixXd values,
                                  double horizon);

  Kind kind() const { return kind_; }
  int count() const { return count_; }
  double horizon() const { return horizon_; }

  Eigen::VectorXd value(double t) const;
  Eigen::VectorXd derivative(double t) const;

  /// Checks Σw = 1, w >= 0, Σẇ = 0 on a uniform grid; throws
  /// std::invalid_argument on the first violation.
  void validate(int grid_points) const;

  static Kind kind_from_name(const std::string& name);
  static std::string kind_name(Kind k);

 private:
  WeightSchedule() = default;

  Kind kind_ = Kind::constant;
  int count_ = 0;
  double horizon_ = 0.0;
  double delta_ = 0.0;                 // clamped-adiabatic
  Eigen::VectorXd w0_, w1_;            // constant / linear endpoints
  Eigen::VectorXd knots_;              // tabulated
  Eigen::MatrixXd values_, tangents_;  // tabulated (rows = knots)
};

}  // namespace chainsim
