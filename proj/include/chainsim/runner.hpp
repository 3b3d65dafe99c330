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
#include <string>
#include <vector>

#include "chainsim/channels.hpp"
#include "chainsim/report.hpp"
#include "chainsim/scenario.hpp"

namespace chainsim {

/// Scenario with every derived quantity materialized: dense terms, built
/// schedule, resolved lambda/epsilon1, initial state, cost model with C.
struct ResolvedScenario {
  HamiltonianSet terms;
  WeightSchedule schedule;
  double lambda = 0.0;
  std::optional<double> epsilon1;
  double C = 0.0;
  DensityMatrix rho0;
  CostModel cost;
};

ResolvedScenario resolve_scenario(const Scenario& scenario);

struct RunOptions {
  int threads = 1;
  std::optional<std::uint64_t> seed_override;
  std::string git_describe;
};

struct RunOutcome {
  std::vector<ReportRow> rows;
  std::string summary;
  bool bound_violation = false;       // a measured lower bound exceeded its analytic bound
  bool numeric_inconsistency = false; // e.g. the fidelity/trace-distance relation broke
  std::optional<double> lambda_slope; // log-log slope, lambda sweeps only
};

/// Full pipeline for one scenario: exact channel, block-ODE averaged channel,
/// MC channel, bias norms, channel-distance lower bound, analytic bounds,
/// gate costs, baselines. Never throws on a bound violation; that is flagged
/// in the outcome so callers can map it to an exit code.
RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options);

enum class SweepAxis { lambda, duration, realizations, baseline_n };

SweepAxis sweep_axis_from_name(const std::string& name);  // lambda | T | M | N_baseline
std::string sweep_axis_name(SweepAxis axis);

/// One run per value along the axis; lambda sweeps also fit the log-log
/// slope of bias_p1 against lambda.
RunOutcome run_sweep(const Scenario& scenario, SweepAxis axis,
                     const std::vector<double>& values, const RunOptions& options);

}  // namespace chainsim
