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

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chainsim/compiler.hpp"
#include "chainsim/quantum.hpp"
#include "chainsim/schedule.hpp"

namespace chainsim {

/// Schedule parameters kept in raw form so sweeps can rebuild the schedule
/// for a different horizon. Tabulated knot times are scaled proportionally.
struct ScheduleSpec {
  WeightSchedule::Kind kind = WeightSchedule::Kind::constant;
  Eigen::VectorXd values;       // constant
  Eigen::VectorXd start, end;   // linear-interpolation
  double delta = 0.0;           // clamped-adiabatic
  Eigen::VectorXd times;        // tabulated, authored for horizon `authored_t`
  Eigen::MatrixXd table;        // tabulated rows (one per knot)
  double authored_t = 0.0;

  WeightSchedule build(double horizon) const;
  int count() const;
};

struct LambdaSpec {
  enum class Kind { explicit_value, from_theorem };
  Kind kind = Kind::explicit_value;
  double value = 0.0;    // explicit
  double epsilon0 = 0.0; // from-theorem
  ErrorModel model = ErrorModel::perfect;
};

struct IntegratorSettings {
  double ode_tol = 1e-10;
  int exact_steps = 0;  // 0 = adaptive step doubling
  int checkpoints = 100;
  int distance_samples = 200;
  int refine_steps = 50;
};

struct BaselineConfig {
  enum class Kind { qdrift, trotter1_det, trotter1_random };
  Kind kind = Kind::qdrift;
  int n = 1;

  static Kind kind_from_name(const std::string& name);
  static std::string kind_name(Kind k);
};

struct InitialState {
  enum class Kind { plus, basis };
  Kind kind = Kind::plus;
  int index = 0;  // basis kind
};

/// One experiment: a decomposition, a schedule, a rate choice, and the
/// Monte-Carlo/integrator budgets. Parsed from versioned JSON
/// (spec_version 1); parse errors carry the JSON path of the offender.
struct Scenario {
  std::string name;
  int qubits = 0;
  std::vector<std::vector<PauliTerm>> hamiltonians;
  bool renormalize = false;  // derive weights from term norms, rescale terms
  ZeroNormPolicy zero_policy = ZeroNormPolicy::reject;
  ScheduleSpec weights;
  double duration = 0.0;  // T
  LambdaSpec lambda;
  long realizations = 0;  // M
  IntegratorSettings steps;
  std::uint64_t seed = 0;
  InitialState initial_state;
  CostModel cost;  // alpha/beta from config; C resolved from the terms at run time
  std::vector<BaselineConfig> baselines;
  std::string out_csv;      // optional explicit output names
  std::string out_summary;
  std::uint64_t config_hash = 0;  // FNV-1a of the normalized JSON text
};

Scenario parse_scenario_text(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

/// FNV-1a 64-bit over a byte string.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace chainsim
