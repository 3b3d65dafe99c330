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
#include <optional>
#include <string>
#include <vector>

namespace chainsim {

/// One CSV row. Optional numeric cells render as empty fields; all numbers
/// use "%.12g" so reruns are byte-identical.
struct ReportRow {
  std::string axis = "none";
  std::optional<double> axis_value;
  std::string scenario;
  int qubits = 0;
  int nodes = 0;
  double duration = 0.0;
  double lambda = 0.0;
  long realizations = 0;
  std::uint64_t seed = 0;
  std::optional<double> bias_p1, bias_p2, bias_pinf;
  std::optional<double> dist_lb;
  std::optional<double> bound_two_node, bound_qnode, bound_general;
  std::optional<double> trace_distance, fidelity;
  std::optional<double> stderr_mc, mc_ode_distance;
  std::optional<double> gates_realized_mean, gates_bound;
  std::optional<double> candidate_events_mean, true_jumps_mean;
  std::string baseline_kind;  // empty on non-baseline rows
  std::optional<double> baseline_error;
};

struct ReportMeta {
  std::uint64_t seed = 0;
  std::string git_describe;
  std::uint64_t config_hash = 0;
};

/// The frozen column order of every report.
extern const char* const kReportColumns;

/// Renders the rows with a comment header (seed, git build, config hash).
/// Throws std::invalid_argument on empty rows.
std::string emit_csv(const std::vector<ReportRow>& rows, const ReportMeta& meta);

/// "%.12g" formatting shared by every numeric cell.
std::string format_number(double v);

}  // namespace chainsim
