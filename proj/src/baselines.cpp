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

#include "chainsim/baselines.hpp"

#include <numeric>
#include <stdexcept>

#include "chainsim/config.hpp"

namespace chainsim {

GateSequence qdrift_sequence(const HamiltonianSet& hamiltonians, double duration,
                             int segments, Philox& rng) {
  if (segments < 1) throw std::invalid_argument("qdrift_sequence: need N >= 1");
  if (!(duration > 0)) throw std::invalid_argument("qdrift_sequence: duration <= 0");
  Eigen::VectorXd norms = hamiltonians.term_norms();
  if (norms.minCoeff() <= tol::zero_norm) {
    throw std::invalid_argument("qdrift_sequence: zero-norm term");
  }
  const double c = norms.sum();
  Eigen::VectorXd probs = norms / c;

  GateSequence seq;
  seq.total_time = duration;
  seq.segments.reserve(segments);
  for (int k = 0; k < segments; ++k) {
    const int j = sample_index(rng, probs);
    const double dwell = c * duration / (segments * norms(j));
    seq.segments.push_back({j, dwell, hamiltonians.unitary(j, dwell)});
  }
  return seq;
}

GateSequence trotter1_sequence(const HamiltonianSet& hamiltonians,
                               const Eigen::VectorXd& weights, double duration,
                               int reps, TrotterOrder order, Philox* rng) {
  if (reps < 1) throw std::invalid_argument("trotter1_sequence: need N >= 1");
  if (!(duration > 0)) throw std::invalid_argument("trotter1_sequence: duration <= 0");
  if (weights.size() != hamiltonians.count()) {
    throw std::invalid_argument("trotter1_sequence: weight count mismatch");
  }
  if (order == TrotterOrder::random_permutation && rng == nullptr) {
    throw std::invalid_argument("trotter1_sequence: random order needs an rng");
  }

  std::vector<int> perm(hamiltonians.count());
  std::iota(perm.begin(), perm.end(), 0);

  GateSequence seq;
  seq.total_time = duration;
  seq.segments.reserve(static_cast<size_t>(reps) * perm.size());
  for (int r = 0; r < reps; ++r) {
    if (order == TrotterOrder::random_permutation) {
      for (size_t k = perm.size(); k > 1; --k) {
        const auto j = static_cast<size_t>(uniform_unit(*rng) * static_cast<double>(k));
        std::swap(perm[k - 1], perm[j < k ? j : k - 1]);
      }
    }
    for (int i : perm) {
      const double dwell = weights(i) * duration / reps;
      seq.segments.push_back({i, dwell, hamiltonians.unitary(i, dwell)});
    }
  }
  return seq;
}

}  // namespace chainsim
