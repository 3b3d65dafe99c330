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

#include "chainsim/compiler.hpp"

#include <cmath>
#include <stdexcept>

#include "chainsim/config.hpp"
#include "chainsim/errors.hpp"

namespace chainsim {

Matrix GateSequence::product() const {
  if (segments.empty()) throw std::logic_error("GateSequence::product: empty sequence");
  Matrix u = segments.front().unitary;
  for (size_t k = 1; k < segments.size(); ++k) {
    u = segments[k].unitary * u;
  }
  return u;
}

void CostModel::validate() const {
  if (alpha < 0 || beta < 0 || !(C > 0)) {
    throw std::invalid_argument("CostModel: need alpha, beta >= 0 and C > 0");
  }
  if (epsilon1 && !(*epsilon1 > 0.0 && *epsilon1 < 1.0)) {
    throw std::invalid_argument("CostModel: epsilon1 must lie in (0, 1)");
  }
}

GateSequence compile_sequence(const Realization& realization,
                              const HamiltonianSet& hamiltonians) {
  GateSequence seq;
  seq.total_time = realization.total;
  seq.segments.reserve(realization.segments.size());
  for (const auto& s : realization.segments) {
    if (s.node < 0 || s.node >= hamiltonians.count()) {
      throw std::invalid_argument("compile_sequence: node index out of range");
    }
    seq.segments.push_back({s.node, s.dwell, hamiltonians.unitary(s.node, s.dwell)});
  }
  return seq;
}

LambdaChoice lambda_for_target_error(double C, double T, double epsilon0,
                                     ErrorModel model) {
  if (!(C > 0) || !(T > 0) || !(epsilon0 > 0)) {
    throw std::invalid_argument("lambda_for_target_error: C, T, epsilon0 must be positive");
  }
  LambdaChoice out;
  const double base = 4.0 * C * C * T / epsilon0;
  if (model == ErrorModel::perfect) {
    out.lambda = base + 2.0 * C;
    return out;
  }
  const double log_arg = 8.0 * C * C * T * T / epsilon0;
  if (!(log_arg > std::exp(1.0))) {
    throw ConfigError("lambda.epsilon0",
                      "imperfect-gate rate selection needs 8 C^2 T^2 > epsilon0 * e");
  }
  const double big_l = std::log(log_arg);
  out.lambda = base * (1.0 + 1.0 / big_l) + 2.0 * C;
  out.epsilon1 = (2.0 * epsilon0 - 8.0 * C * C * T / (out.lambda - 2.0 * C)) /
                 (out.lambda * T);
  return out;
}

namespace {

double imperfect_factor(const CostModel& model) {
  return model.epsilon1 ? std::log(1.0 / *model.epsilon1) : 1.0;
}

}  // namespace

double realized_gate_cost(const GateSequence& seq, const CostModel& model) {
  model.validate();
  double cost = 0.0;
  for (const auto& s : seq.segments) {
    cost += model.alpha + model.beta * model.C * s.dwell;
  }
  return cost * imperfect_factor(model);
}

double realized_gate_cost(const Realization& realization, const CostModel& model) {
  model.validate();
  double cost = 0.0;
  for (const auto& s : realization.segments) {
    cost += model.alpha + model.beta * model.C * s.dwell;
  }
  return cost * imperfect_factor(model);
}

double expected_gate_cost_bound(double duration, double lambda, const CostModel& model) {
  model.validate();
  if (!(duration > 0) || !(lambda > 0)) {
    throw std::invalid_argument("expected_gate_cost_bound: duration and lambda must be positive");
  }
  return duration * (model.alpha * lambda + model.beta * model.C) * imperfect_factor(model);
}

Renormalized renormalize_decomposition(const std::vector<HermitianOperator>& h_list,
                                       ZeroNormPolicy policy) {
  if (h_list.empty()) throw std::invalid_argument("renormalize_decomposition: empty list");
  std::vector<double> norms(h_list.size());
  Renormalized out;
  for (size_t i = 0; i < h_list.size(); ++i) {
    norms[i] = h_list[i].operator_norm();
    if (norms[i] <= tol::zero_norm) {
      if (policy == ZeroNormPolicy::reject) {
        throw std::invalid_argument("renormalize_decomposition: term " +
                                    std::to_string(i) + " has zero norm");
      }
      continue;
    }
    out.kept.push_back(static_cast<int>(i));
  }
  if (out.kept.empty()) {
    throw std::invalid_argument("renormalize_decomposition: all terms have zero norm");
  }
  double c = 0.0;
  for (int i : out.kept) c += norms[i];
  out.c = c;
  out.weights.resize(static_cast<Eigen::Index>(out.kept.size()));
  out.terms.reserve(out.kept.size());
  for (size_t k = 0; k < out.kept.size(); ++k) {
    const int i = out.kept[k];
    out.weights(static_cast<Eigen::Index>(k)) = norms[i] / c;
    out.terms.push_back(HermitianOperator((c / norms[i]) * h_list[i].matrix()));
  }
  return out;
}

}  // namespace chainsim
