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

#include "chainsim/compiler.hpp"
#include "chainsim/quantum.hpp"
#include "chainsim/rng.hpp"

namespace chainsim {

/// Randomized compiler baseline: N segments, each drawing term j with
/// probability ‖H_j‖/c (c = Σ_k ‖H_k‖) and applying e^{-iH_j·cT/(N‖H_j‖)},
/// so every segment contributes (T/N)·ΣH_i in expectation. Zero-norm terms
/// are rejected.
GateSequence qdrift_sequence(const HamiltonianSet& hamiltonians, double duration,
                             int segments, Philox& rng);

enum class TrotterOrder { fixed, random_permutation };

/// First-order product formula: N repetitions of ∏_i e^{-i w_i H_i T/N},
/// with the factor order kept fixed or freshly permuted every repetition
/// (rng required in that case).
GateSequence trotter1_sequence(const HamiltonianSet& hamiltonians,
                               const Eigen::VectorXd& weights, double duration,
                               int reps, TrotterOrder order, Philox* rng = nullptr);

}  // namespace chainsim
