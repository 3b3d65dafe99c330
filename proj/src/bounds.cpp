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

#include "chainsim/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "chainsim/config.hpp"
#include "chainsim/errors.hpp"

namespace chainsim {

namespace {

double node_count_factor(int nodes, Schatten p) {
  switch (p) {
    case Schatten::one:
      return 1.0;
    case Schatten::two:
      return std::sqrt(static_cast<double>(nodes));
    case Schatten::inf:
      return static_cast<double>(nodes);
  }
  return 1.0;
}

double holder_norm(const Eigen::VectorXd& w, Schatten p) {
  switch (p) {
    case Schatten::one:
      return w.cwiseAbs().sum();
    case Schatten::two:
      return w.norm();
    case Schatten::inf:
      return w.cwiseAbs().maxCoeff();
  }
  return 0.0;
}

}  // namespace

double bound_two_node(double w_sup_product, double delta_h_norm, double duration,
                      double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("bound_two_node: lambda must be positive");
  if (w_sup_product < 0 || delta_h_norm < 0 || duration < 0) {
    throw std::invalid_argument("bound_two_node: negative input");
  }
  return 4.0 * duration / lambda * w_sup_product * delta_h_norm * delta_h_norm;
}

double bound_balanced_qnode(double C, double duration, double lambda) {
  if (!(C > 0) || duration < 0) {
    throw std::invalid_argument("bound_balanced_qnode: need C > 0, duration >= 0");
  }
  if (!(lambda > 2.0 * C)) {
    throw RateError("bound_balanced_qnode: pole at lambda = 2C, need lambda > 2C");
  }
  return 8.0 * C * C * duration / (lambda - 2.0 * C);
}

double bound_general_p(const BoundInputs& in) {
  if (in.nodes < 1 || !(in.C > 0) || in.duration < 0 || !(in.lambda > 0)) {
    throw std::invalid_argument("bound_general_p: bad inputs");
  }
  const double prefactor = node_count_factor(in.nodes, in.p) * in.w_norm_p;
  const double denom = in.lambda - 2.0 * prefactor * in.C;
  if (!(denom > 0)) {
    throw RateError("bound_general_p: pole, need lambda > 2 Q^{(p-1)/p} ‖w‖_p ‖H‖");
  }
  return 4.0 * prefactor * in.deviation_norm * in.C * in.duration / denom;
}

BoundInputs bound_inputs_from(const HamiltonianSet& hamiltonians,
                              const WeightSchedule& schedule, double lambda,
                              Schatten p) {
  if (hamiltonians.count() != schedule.count()) {
    throw std::invalid_argument("bound_inputs_from: node/term count mismatch");
  }
  BoundInputs in;
  in.nodes = hamiltonians.count();
  in.duration = schedule.horizon();
  in.lambda = lambda;
  in.p = p;
  in.term_norms = hamiltonians.term_norms();
  in.C = in.term_norms.maxCoeff();

  const int grid =
      schedule.kind() == WeightSchedule::Kind::constant ? 1 : tol::sup_grid_points;
  for (int g = 0; g < grid; ++g) {
    const double t = grid == 1 ? 0.0 : in.duration * g / (grid - 1);
    const Eigen::VectorXd w = schedule.value(t);
    in.w_norm_p = std::max(in.w_norm_p, holder_norm(w, p));
    if (in.nodes == 2) {
      in.w_sup_product = std::max(in.w_sup_product, w(0) * w(1));
    }
    const Matrix target = hamiltonians.weighted_sum(w).matrix();
    for (int i = 0; i < in.nodes; ++i) {
      in.deviation_norm =
          std::max(in.deviation_norm,
                   schatten_norm(hamiltonians.term(i).matrix() - target, Schatten::inf));
    }
  }
  return in;
}

}  // namespace chainsim
