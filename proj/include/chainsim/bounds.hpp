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

#include <Eigen/Dense>

#include "chainsim/quantum.hpp"
#include "chainsim/schedule.hpp"

namespace chainsim {

/// Everything the analytic error bounds consume. For time-dependent
/// schedules the weight-dependent quantities are suprema over a dense grid,
/// which makes each bound conservative; for constant schedules they are
/// exact.
struct BoundInputs {
  int nodes = 0;
  double duration = 0.0;
  double lambda = 0.0;
  Schatten p = Schatten::one;
  double C = 0.0;               // max_i ‖H_i‖_∞, also the block operator norm
  double w_sup_product = 0.0;   // sup_t w_1 w_2 (two-node bound only)
  Eigen::VectorXd term_norms;   // ‖H_i‖_∞
  double deviation_norm = 0.0;  // max over i (and t) of ‖H_i - Σ_j w_j H_j‖_∞
  double w_norm_p = 0.0;        // sup_t ‖w(t)‖_p
};

/// Averaged-vs-exact channel error of the two-node balanced scheme:
/// (4T/λ)·sup_t(w₁w₂)·‖H₁-H₂‖²_∞.
double bound_two_node(double w_sup_product, double delta_h_norm, double duration,
                      double lambda);

/// Uniform-weight Q-node bound 8C²T/(λ-2C); independent of Q. Throws a pole
/// error unless λ > 2C.
double bound_balanced_qnode(double C, double duration, double lambda);

/// General Schatten-p bound
///   4·Q^{(p-1)/p}·‖w‖_p·‖𝓗-H⊗1‖_∞·‖𝓗‖_∞·T / (λ - 2·Q^{(p-1)/p}·‖𝓗‖_∞·‖w‖_p).
/// For p = 1, or uniform weights at any p, the prefactor Q^{(p-1)/p}‖w‖_p is
/// 1 and with ‖𝓗-H⊗1‖ = 2C this reduces to bound_balanced_qnode. Throws a
/// pole error when the denominator is not positive.
double bound_general_p(const BoundInputs& inputs);

/// Harvests BoundInputs from a decomposition and its schedule. Weight-grid
/// suprema use sup_grid_points samples plus endpoints; constant schedules
/// are evaluated once.
BoundInputs bound_inputs_from(const HamiltonianSet& hamiltonians,
                              const WeightSchedule& schedule, double lambda,
                              Schatten p);

}  // namespace chainsim
