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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "chainsim/markov.hpp"
#include "chainsim/quantum.hpp"

namespace chainsim {

/// A realization translated into gates: one e^{-iH_node dwell} per segment,
/// in trajectory order (segments[0] acts first).
struct GateSequence {
  struct Item {
    int node = 0;
    double dwell = 0.0;
    Matrix unitary;
  };
  std::vector<Item> segments;
  double total_time = 0.0;

  /// Product of all segment unitaries, latest leftmost.
  Matrix product() const;
};

/// Cost accounting: alpha per segment, beta*C per unit of evolution time.
/// epsilon1, when set, marks the imperfect-gate model and scales costs by
/// ln(1/epsilon1).
struct CostModel {
  double alpha = 0.0;
  double beta = 0.0;
  double C = 1.0;
  std::optional<double> epsilon1;

  void validate() const;
};

GateSequence compile_sequence(const Realization& realization,
                              const HamiltonianSet& hamiltonians);

enum class ErrorModel { perfect, imperfect };

struct LambdaChoice {
  double lambda = 0.0;
  std::optional<double> epsilon1;  // set for the imperfect model
};

/// Picks the total rate that meets a target averaged-channel error 2ε₀.
/// Perfect gates: λ = 4C²T/ε₀ + 2C. Imperfect gates:
/// λ = (4C²T/ε₀)(1 + 1/ln(8C²T²/ε₀)) + 2C and ε₁ chosen to spend the rest of
/// the error budget, ε₁ = (2ε₀ - 8C²T/(λ-2C))/(λT), so that
/// 8C²T/(λ-2C) + λTε₁ = 2ε₀ holds exactly. The imperfect model requires
/// 8C²T² > ε₀·e so that the logarithm stays above 1.
LambdaChoice lambda_for_target_error(double C, double T, double epsilon0,
                                     ErrorModel model);

/// Σ_k (α + βC·dwell_k) over the merged segments, times ln(1/ε₁) for the
/// imperfect model.
double realized_gate_cost(const GateSequence& seq, const CostModel& model);

/// Same accounting straight off a realization, without building unitaries.
double realized_gate_cost(const Realization& realization, const CostModel& model);

/// T(αλ + βC), times ln(1/ε₁) for the imperfect model. Upper-bounds the mean
/// realized cost, which counts only post-merge segments.
double expected_gate_cost_bound(double duration, double lambda, const CostModel& model);

enum class ZeroNormPolicy { reject, drop };

struct Renormalized {
  Eigen::VectorXd weights;               // w_i = ‖H_i‖/c
  std::vector<HermitianOperator> terms;  // H̃_i = (c/‖H_i‖) H_i, ‖H̃_i‖ = c
  double c = 0.0;                        // Σ_j ‖H_j‖_∞
  std::vector<int> kept;                 // original indices (drop policy removes some)
};

/// Rescales an unweighted decomposition Σ H_i into weights plus norm-equal
/// terms with Σ w_i H̃_i = Σ H_i. Zero-norm terms are dropped or rejected per
/// policy.
Renormalized renormalize_decomposition(const std::vector<HermitianOperator>& h_list,
                                       ZeroNormPolicy policy = ZeroNormPolicy::reject);

}  // namespace chainsim
