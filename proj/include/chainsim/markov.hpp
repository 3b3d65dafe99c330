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

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chainsim/rng.hpp"
#include "chainsim/schedule.hpp"

namespace chainsim {

/// Balanced transition scheme: every column of the rate matrix carries the
/// same rates a_j(t) = ẇ_j(t) + λ w_j(t), so the total outflow from any node
/// is λ and the chain's occupancy p(t) reproduces w(t) from p(0) = w(0).
struct BalancedScheme {
  WeightSchedule schedule;
  double lambda = 0.0;
};

/// Validates a_j(t) >= -1e-10 on a uniform grid over [0, horizon] before
/// handing the scheme out. Throws RateError("λ too small...") otherwise.
BalancedScheme make_balanced(WeightSchedule schedule, double lambda,
                             int grid_points = 0 /* 0 = default grid */);

/// a_j(t) = ẇ_j(t) + λ w_j(t). Throws RateError if any entry < -1e-10.
Eigen::VectorXd balanced_rates(const BalancedScheme& scheme, double t);

/// Q×Q rate-matrix function A(t): A_ij (i≠j) is the i→j transition rate and
/// A_ii = -Σ_{j≠i} A_ij, so occupancies follow ∂_t p = Aᵀ p.
struct RateMatrix {
  int nodes = 0;
  std::function<Eigen::MatrixXd(double)> entries;
};

/// A_ij(t) = a_j(t) for i≠j, A_ii(t) = a_i(t) - λ.
RateMatrix balanced_rate_matrix(const BalancedScheme& scheme);

struct RateValidationReport {
  bool ok = true;
  std::string violation;    // "negative-offdiagonal" | "row-sum" | ""
  int row = -1, col = -1;   // first offending entry
  double time = 0.0;        // grid time of the first violation
  double value = 0.0;       // offending value
  double null_gap = 0.0;    // min over grid of |second-smallest eigenvalue of Aᵀ|
  bool null_nondegenerate = false;
};

/// Structural check at each grid time: off-diagonal nonnegativity, zero row
/// sums, and the spectral gap above the null eigenvalue of Aᵀ.
RateValidationReport validate_rate_matrix(const RateMatrix& a,
                                          const std::vector<double>& grid);

/// Occupancy at time t for ∂_t p = a(τ) - λ p, p(0) = p0: the closed form
/// p(t) = q(t) + (p0 - q(0)) e^{-λt} - ∫₀ᵗ q̇(τ) e^{-λ(t-τ)} dτ with q = a/λ,
/// evaluated after integration by parts as
/// p(t) = p0 e^{-λt} + ∫₀ᵗ a(τ) e^{-λ(t-τ)} dτ
/// so only first derivatives of the schedule are needed. Quadrature is
/// adaptive Simpson to 1e-10.
Eigen::VectorXd occupancy_solution(const BalancedScheme& scheme,
                                   const Eigen::VectorXd& p0, double t);

struct Segment {
  int node = 0;
  double dwell = 0.0;
};

/// One sampled chain trajectory, flattened to merged dwell segments.
struct Realization {
  std::vector<Segment> segments;
  double total = 0.0;

  /// Node occupied at time t (right-continuous; t = total maps to the last
  /// segment).
  int node_at(double t) const;
};

struct RealizationStats {
  long candidate_events = 0;  // Poisson clock firings in [0, T)
  long true_jumps = 0;        // firings that changed the node
};

/// Uniformization sampling: the candidate-event clock is Poisson with the
/// exact rate λ (= Σ_j a_j at all times), the next node at an event at time t
/// is drawn from {a_j(t)/λ}, and self-transitions are merged into the current
/// dwell. The initial node is drawn from w(0).
Realization sample_realization(const BalancedScheme& scheme, double duration,
                               Philox& rng, RealizationStats* stats = nullptr);

/// Adaptive Simpson quadrature of a vector-valued integrand over [a, b] with
/// an ‖·‖_∞ error target. Exposed for reuse by the bound evaluators.
Eigen::VectorXd adaptive_simpson(const std::function<Eigen::VectorXd(double)>& f,
                                 double a, double b, double tolerance);

}  // namespace chainsim
