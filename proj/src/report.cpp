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

#include "chainsim/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace chainsim {

const char* const kReportColumns =
    "axis,value,scenario,qubits,Q,T,lambda,M,seed,"
    "bias_p1,bias_p2,bias_pinf,dist_lb,"
    "bound_two_node,bound_qnode,bound_general,"
    "trace_distance,fidelity,stderr_mc,mc_ode_distance,"
    "gates_realized_mean,gates_bound,"
    "candidate_events_mean,true_jumps_mean,"
    "baseline_kind,baseline_error";

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string emit_csv(const std::vector<ReportRow>& rows, const ReportMeta& meta) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows to report");
  std::ostringstream out;
  out << "# seed: " << meta.seed << "\n";
  out << "# git: " << (meta.git_describe.empty() ? "unknown" : meta.git_describe) << "\n";
  out << "# config-hash: " << hex64(meta.config_hash) << "\n";
  out << kReportColumns << "\n";
  for (const auto& r : rows) {
    out << r.axis << ',' << cell(r.axis_value) << ',' << r.scenario << ','
        << r.qubits << ',' << r.nodes << ',' << format_number(r.duration) << ','
        << format_number(r.lambda) << ',' << r.realizations << ',' << r.seed << ','
        << cell(r.bias_p1) << ',' << cell(r.bias_p2) << ',' << cell(r.bias_pinf) << ','
        << cell(r.dist_lb) << ',' << cell(r.bound_two_node) << ','
        << cell(r.bound_qnode) << ',' << cell(r.bound_general) << ','
        << cell(r.trace_distance) << ',' << cell(r.fidelity) << ','
        << cell(r.stderr_mc) << ',' << cell(r.mc_ode_distance) << ','
        << cell(r.gates_realized_mean) << ',' << cell(r.gates_bound) << ','
        << cell(r.candidate_events_mean) << ',' << cell(r.true_jumps_mean) << ','
        << r.baseline_kind << ',' << cell(r.baseline_error) << "\n";
  }
  return out.str();
}

}  // namespace chainsim
