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

namespace chainsim::tol {

// Numerical tolerances used across the library. These are contract values:
// acceptance tests assert against them, so they live in one place.
inline constexpr double hermiticity = 1e-12;       // elementwise |M - M†|
inline constexpr double unitarity = 1e-10;         // ‖U†U - I‖_∞
inline constexpr double trace_one = 1e-10;         // |tr ρ - 1|
inline constexpr double density_eig_floor = -1e-10;  // smallest admissible eigenvalue of ρ
inline constexpr double block_eig_floor = -1e-9;   // per-block floor along ODE trajectories
inline constexpr double block_hermiticity = 1e-10; // elementwise drift allowed along trajectories
inline constexpr double block_trace_sum = 1e-9;    // |Σ tr ρ_i - 1| along trajectories
inline constexpr double weight_sum = 1e-12;        // |Σ w_i - 1|
inline constexpr double weight_derivative_sum = 1e-10;  // |Σ ẇ_i|
inline constexpr double rate_floor = -1e-10;       // admissible a_j before rejection
inline constexpr double row_sum = 1e-10;           // rate-matrix row sums
inline constexpr double null_gap = 1e-8;           // non-degeneracy gap for the null eigenvalue
inline constexpr double quadrature = 1e-10;        // adaptive Simpson target
inline constexpr double zero_norm = 1e-14;         // ‖H_i‖ at or below this counts as zero
inline constexpr double time_ordered_doubling = 1e-8;  // step-doubling drift for exact evolution

inline constexpr int max_qubits = 10;              // dense desk-scale cap (dim 1024)
inline constexpr int max_ode_doublings = 20;       // step-halving budget before giving up
inline constexpr int rate_grid_points = 1001;      // validation grid for schemes
inline constexpr int sup_grid_points = 10001;      // grid for sup_T(w_i w_j) style quantities

}  // namespace chainsim::tol
