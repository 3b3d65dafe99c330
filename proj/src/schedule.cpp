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

#include "chainsim/schedule.hpp"

#include <cmath>
#include <stdexcept>

#include "chainsim/config.hpp"

namespace chainsim {

namespace {

void require_probability_vector(const Eigen::VectorXd& w, const char* what) {
  if (w.size() < 1) throw std::invalid_argument(std::string(what) + ": empty weight vector");
  if (w.minCoeff() < 0.0) {
    throw std::invalid_argument(std::string(what) + ": negative weight");
  }
  if (std::abs(w.sum() - 1.0) > tol::weight_sum) {
    throw std::invalid_argument(std::string(what) + ": weights do not sum to 1");
  }
}

void require_horizon(double horizon, const char* what) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": horizon must be positive");
  }
}

}  // namespace

WeightSchedule WeightSchedule::constant(Eigen::VectorXd w, double horizon) {
  require_probability_vector(w, "constant schedule");
  require_horizon(horizon, "constant schedule");
  WeightSchedule s;
  s.kind_ = Kind::constant;
  s.count_ = static_cast<int>(w.size());
  s.horizon_ = horizon;
  s.w0_ = std::move(w);
  return s;
}

WeightSchedule WeightSchedule::linear(Eigen::VectorXd w0, Eigen::VectorXd w1,
                                      double horizon) {
  require_probability_vector(w0, "linear schedule");
  require_probability_vector(w1, "linear schedule");
  require_horizon(horizon, "linear schedule");
  if (w0.size() != w1.size()) {
    throw std::invalid_argument("linear schedule: endpoint sizes differ");
  }
  WeightSchedule s;
  s.kind_ = Kind::linear_interpolation;
  s.count_ = static_cast<int>(w0.size());
  s.horizon_ = horizon;
  s.w0_ = std::move(w0);
  s.w1_ = std::move(w1);
  return s;
}

WeightSchedule WeightSchedule::clamped_adiabatic(double delta, double horizon) {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("clamped-adiabatic schedule: delta must lie in (0, 1/2)");
  }
  require_horizon(horizon, "clamped-adiabatic schedule");
  WeightSchedule s;
  s.kind_ = Kind::clamped_adiabatic;
  s.count_ = 2;
  s.horizon_ = horizon;
  s.delta_ = delta;
  return s;
}

WeightSchedule WeightSchedule::tabulated(Eigen::VectorXd knots, Eigen::MatrixXd values,
                                         double horizon) {
  require_horizon(horizon, "tabulated schedule");
  if (knots.size() < 2 || values.rows() != knots.size() || values.cols() < 1) {
    throw std::invalid_argument("tabulated schedule: need >= 2 knots with one value row each");
  }
  if (knots(0) != 0.0 || std::abs(knots(knots.size() - 1) - horizon) > 1e-12) {
    throw std::invalid_argument("tabulated schedule: knots must span [0, horizon]");
  }
  for (Eigen::Index k = 1; k < knots.size(); ++k) {
    if (!(knots(k) > knots(k - 1))) {
      throw std::invalid_argument("tabulated schedule: knots must be strictly increasing");
    }
  }
  for (Eigen::Index k = 0; k < knots.size(); ++k) {
    Eigen::VectorXd row = values.row(k).transpose();
    require_probability_vector(row, "tabulated schedule knot");
  }

  WeightSchedule s;
  s.kind_ = Kind::tabulated;
  s.count_ = static_cast<int>(values.cols());
  s.horizon_ = horizon;
  s.knots_ = std::move(knots);
  s.values_ = std::move(values);

  // Catmull-Rom tangents: centered slope through neighbours, one-sided
  // secants at the ends. Constant columns get zero tangents, so the Hermite
  // pieces reproduce constants (and the per-knot sum of 1) exactly.
  const Eigen::Index m = s.knots_.size();
  s.tangents_.resize(m, s.values_.cols());
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index lo = k == 0 ? 0 : k - 1;
    const Eigen::Index hi = k == m - 1 ? m - 1 : k + 1;
    s.tangents_.row(k) =
        (s.values_.row(hi) - s.values_.row(lo)) / (s.knots_(hi) - s.knots_(lo));
  }
  return s;
}

Eigen::VectorXd WeightSchedule::value(double t) const {
  switch (kind_) {
    case Kind::constant:
      return w0_;
    case Kind::linear_interpolation: {
      const double s = t / horizon_;
      return w0_ + (w1_ - w0_) * s;
    }
    case Kind::clamped_adiabatic: {
      Eigen::VectorXd w(2);
      w(0) = delta_ + (1.0 - 2.0 * delta_) * (1.0 - t / horizon_);
      w(1) = 1.0 - w(0);
      return w;
    }
    case Kind::tabulated: {
      Eigen::Index k = 0;
      while (k + 2 < knots_.size() && t >= knots_(k + 1)) ++k;
      const double h = knots_(k + 1) - knots_(k);
      const double s = (t - knots_(k)) / h;
      const double h00 = (2 * s - 3) * s * s + 1;
      const double h10 = ((s - 2) * s + 1) * s;
      const double h01 = (3 - 2 * s) * s * s;
      const double h11 = (s - 1) * s * s;
      return (h00 * values_.row(k) + h10 * h * tangents_.row(k) +
              h01 * values_.row(k + 1) + h11 * h * tangents_.row(k + 1))
          .transpose();
    }
  }
  throw std::logic_error("WeightSchedule::value: bad kind");
}

Eigen::VectorXd WeightSchedule::derivative(double t) const {
  switch (kind_) {
    case Kind::constant:
      return Eigen::VectorXd::Zero(count_);
    case Kind::linear_interpolation:
      return (w1_ - w0_) / horizon_;
    case Kind::clamped_adiabatic: {
      Eigen::VectorXd d(2);
      d(0) = -(1.0 - 2.0 * delta_) / horizon_;
      d(1) = -d(0);
      return d;
    }
    case Kind::tabulated: {
      Eigen::Index k = 0;
      while (k + 2 < knots_.size() && t >= knots_(k + 1)) ++k;
      const double h = knots_(k + 1) - knots_(k);
      const double s = (t - knots_(k)) / h;
      const double d00 = 6 * s * (s - 1);
      const double d10 = (3 * s - 4) * s + 1;
      const double d01 = -6 * s * (s - 1);
      const double d11 = (3 * s - 2) * s;
      return ((d00 / h) * values_.row(k) + d10 * tangents_.row(k) +
              (d01 / h) * values_.row(k + 1) + d11 * tangents_.row(k + 1))
          .transpose();
    }
  }
  throw std::logic_error("WeightSchedule::derivative: bad kind");
}

void WeightSchedule::validate(int grid_points) const {
  if (grid_points < 2) throw std::invalid_argument("validate: need >= 2 grid points");
  for (int g = 0; g < grid_points; ++g) {
    const double t = horizon_ * g / (grid_points - 1);
    Eigen::VectorXd w = value(t);
    Eigen::VectorXd d = derivative(t);
    if (std::abs(w.sum() - 1.0) > tol::weight_sum) {
      throw std::invalid_argument("schedule: weights do not sum to 1 at t=" + std::to_string(t));
    }
    if (w.minCoeff() < -tol::weight_sum) {
      throw std::invalid_argument("schedule: negative weight at t=" + std::to_string(t));
    }
    if (std::abs(d.sum()) > tol::weight_derivative_sum) {
      throw std::invalid_argument("schedule: derivatives do not sum to 0 at t=" +
                                  std::to_string(t));
    }
  }
}

WeightSchedule::Kind WeightSchedule::kind_from_name(const std::string& name) {
  if (name == "constant") return Kind::constant;
  if (name == "linear-interpolation") return Kind::linear_interpolation;
  if (name == "clamped-adiabatic") return Kind::clamped_adiabatic;
  if (name == "tabulated") return Kind::tabulated;
  throw std::invalid_argument("unknown schedule kind '" + name + "'");
}

std::string WeightSchedule::kind_name(Kind k) {
  switch (k) {
    case Kind::constant: return "constant";
    case Kind::linear_interpolation: return "linear-interpolation";
    case Kind::clamped_adiabatic: return "clamped-adiabatic";
    case Kind::tabulated: return "tabulated";
  }
  return "?";
}

}  // namespace chainsim
