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
#include <optional>
#include <vector>

#include "chainsim/compiler.hpp"
#include "chainsim/markov.hpp"
#include "chainsim/quantum.hpp"
#include "chainsim/rng.hpp"

namespace chainsim {

/// Node-resolved state: Q sub-normalized blocks ρ_i with Σ_i tr ρ_i = 1.
/// tr ρ_i is the chain's occupancy of node i; Σ_i ρ_i is the averaged
/// quantum state.
struct BlockState {
  std::vector<Matrix> blocks;
  double time = 0.0;

  Matrix reduced() const;          // Σ_i ρ_i
  Eigen::VectorXd traces() const;  // (tr ρ_1, ..., tr ρ_Q)

  /// Hermiticity to 1e-10, eigenvalues >= -1e-9 per block, Σ tr = 1 ± 1e-9.
  void validate() const;
};

struct ChannelEstimate {
  DensityMatrix output;
  double stderr_trace = 0.0;  // ‖entrywise std-dev matrix‖₁ / √M, 0 for M = 1
  long realizations = 0;
};

/// U ρ0 U† with U the midpoint time-ordered product over `steps` slices.
DensityMatrix exact_channel(const HamiltonianSchedule& h, double duration,
                            const DensityMatrix& rho0, int steps);

/// Time-ordered product refined by step doubling until two refinements agree
/// elementwise below `tolerance`. Starts from `initial_steps` slices.
UnitaryOperator exact_unitary_adaptive(const HamiltonianSchedule& h, double t0,
                                       double t1, double tolerance,
                                       int initial_steps = 16);

struct BlockTrajectory {
  std::vector<BlockState> checkpoints;  // n_check+1 states, t = k·T/n_check
  long steps_used = 0;                  // accepted RK4 steps at convergence

  const BlockState& final_state() const { return checkpoints.back(); }
};

/// Integrates the node-resolved equation of motion
///   ∂_t ρ_i = -i[H_i, ρ_i] + a_i(t)·Σ_j ρ_j - λ ρ_i
/// from ρ_i(0) = w_i(0)·ρ0 by RK4 with global step halving until successive
/// refinements agree below `tolerance` in Σ_i‖·‖₁ at every checkpoint. The
/// reduced state Σρ_i at the end is the exact average of the Monte-Carlo
/// channel. Initial step is capped at 0.1/λ.
BlockTrajectory averaged_channel_ode(const BalancedScheme& scheme,
                                     const HamiltonianSet& hamiltonians,
                                     const DensityMatrix& rho0, double tolerance,
                                     int n_check = 100);

/// Same integrator for a general rate matrix: ∂_t ρ_i = -i[H_i,ρ_i]
/// + Σ_j A_ji(t) ρ_j, from ρ_i(0) = p0_i·ρ0. Simulation only; no analytic
/// bounds apply to non-balanced schemes.
BlockTrajectory averaged_channel_ode(const RateMatrix& rates,
                                     const HamiltonianSet& hamiltonians,
                                     const Eigen::VectorXd& p0,
                                     const DensityMatrix& rho0, double duration,
                                     double tolerance, int n_check = 100);

/// Monte-Carlo estimate of the averaged channel: mean over M compiled
/// realizations of U ρ0 U†, with an optional depolarizing kick of strength
/// epsilon1 after every segment. Realization m always draws from the stream
/// streams.stream(m), and accumulation runs in a fixed slot order, so the
/// result is byte-identical for any thread count.
ChannelEstimate mc_channel(const BalancedScheme& scheme,
                           const HamiltonianSet& hamiltonians,
                           const DensityMatrix& rho0, long realizations,
                           const StreamFactory& streams,
                           std::optional<double> epsilon1 = std::nullopt,
                           int threads = 1);

/// ‖exact - averaged‖_p.
double bias_norm(const DensityMatrix& exact, const DensityMatrix& averaged, Schatten p);

/// Density-matrix-in, density-matrix-out map (dense representation).
using ChannelFn = std::function<Matrix(const Matrix&)>;

/// Lower bound on the 1→1 induced norm of (A - B): best of n_samples Haar
/// pure inputs, then `refine_steps` of random local search around the best.
double channel_distance_lb(const ChannelFn& a, const ChannelFn& b, Eigen::Index dim,
                           int n_samples, Philox& rng, int refine_steps = 50);

/// d²×d² matrix S with vec(channel(ρ)) = S·vec(ρ) (column-major vec), built
/// by integrating the block equation once per basis matrix.
Matrix averaged_superoperator(const BalancedScheme& scheme,
                              const HamiltonianSet& hamiltonians,
                              double tolerance);

/// vec(UρU†) = (conj(U) ⊗ U)·vec(ρ).
Matrix unitary_superoperator(const Matrix& u);

ChannelFn channel_from_superoperator(Matrix s);

}  // namespace chainsim
