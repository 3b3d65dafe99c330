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

#include "chainsim/runner.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "chainsim/baselines.hpp"
#include "chainsim/bounds.hpp"
#include "chainsim/channels.hpp"
#include "chainsim/config.hpp"
#include "chainsim/errors.hpp"

namespace chainsim {

namespace {

DensityMatrix initial_density(const InitialState& init, int qubits) {
  const Eigen::Index dim = Eigen::Index(1) << qubits;
  if (init.kind == InitialState::Kind::plus) {
    Vector psi = Vector::Constant(dim, Complex(1.0 / std::sqrt(double(dim)), 0.0));
    return DensityMatrix::pure(psi);
  }
  Vector psi = Vector::Zero(dim);
  psi(init.index) = 1.0;
  return DensityMatrix::pure(psi);
}

}  // namespace

ResolvedScenario resolve_scenario(const Scenario& s) {
  std::vector<HermitianOperator> dense;
  dense.reserve(s.hamiltonians.size());
  for (const auto& list : s.hamiltonians) {
    dense.push_back(pauli_to_dense(list, s.qubits));
  }

  std::optional<HamiltonianSet> set;
  std::optional<WeightSchedule> schedule;
  if (s.renormalize) {
    Renormalized ren = renormalize_decomposition(dense, s.zero_policy);
    set.emplace(std::move(ren.terms));
    schedule = WeightSchedule::constant(ren.weights, s.duration);
  } else {
    set.emplace(std::move(dense));
    schedule = s.weights.build(s.duration);
  }

  const double c_norm = set->max_norm();
  double lambda = 0.0;
  std::optional<double> epsilon1;
  if (s.lambda.kind == LambdaSpec::Kind::explicit_value) {
    lambda = s.lambda.value;
  } else {
    LambdaChoice choice =
        lambda_for_target_error(c_norm, s.duration, s.lambda.epsilon0, s.lambda.model);
    lambda = choice.lambda;
    epsilon1 = choice.epsilon1;
  }

  CostModel cost = s.cost;
  cost.C = c_norm;
  cost.epsilon1 = epsilon1;
  cost.validate();

  return ResolvedScenario{std::move(*set), std::move(*schedule), lambda,
                          epsilon1,        c_norm,               initial_density(s.initial_state, s.qubits),
                          cost};
}

namespace {

struct PointResult {
  ReportRow row;
  std::vector<ReportRow> baseline_rows;
  double max_marginal_dev = 0.0;
  bool violation = false;
  bool inconsistency = false;
  std::vector<std::string> violation_notes;
};

void note_violation(PointResult& pr, const char* measured_name, double measured,
                    const char* bound_name, std::optional<double> bound, double slack) {
  if (bound && measured > *bound + slack) {
    pr.violation = true;
    pr.violation_notes.push_back(std::string(measured_name) + " = " +
                                 format_number(measured) + " exceeds " + bound_name +
                                 " = " + format_number(*bound));
  }
}

PointResult evaluate_point(const Scenario& s, const RunOptions& opt,
                           const std::string& axis, std::optional<double> axis_value) {
  const std::uint64_t seed = opt.seed_override.value_or(s.seed);
  ResolvedScenario r = resolve_scenario(s);
  BalancedScheme scheme = make_balanced(r.schedule, r.lambda);
  const Eigen::Index dim = r.terms.dim();

  PointResult pr;
  ReportRow& row = pr.row;
  row.axis = axis;
  row.axis_value = axis_value;
  row.scenario = s.name;
  row.qubits = s.qubits;
  row.nodes = r.terms.count();
  row.duration = s.duration;
  row.lambda = r.lambda;
  row.realizations = s.realizations;
  row.seed = seed;

  // Exact target channel.
  HamiltonianSchedule target = [&r](double t) {
    return r.terms.weighted_sum(r.schedule.value(t));
  };
  UnitaryOperator u_exact =
      s.steps.exact_steps > 0
          ? time_ordered_unitary(target, 0.0, s.duration, s.steps.exact_steps)
          : exact_unitary_adaptive(target, 0.0, s.duration, tol::time_ordered_doubling);
  DensityMatrix rho_exact(u_exact.conjugate(r.rho0.matrix()));

  // Averaged channel, node-resolved ODE.
  BlockTrajectory traj = averaged_channel_ode(scheme, r.terms, r.rho0,
                                              s.steps.ode_tol, s.steps.checkpoints);
  for (const auto& state : traj.checkpoints) {
    state.validate();
    Eigen::VectorXd dev = state.traces() - r.schedule.value(state.time);
    pr.max_marginal_dev = std::max(pr.max_marginal_dev, dev.cwiseAbs().maxCoeff());
  }
  DensityMatrix rho_avg(traj.final_state().reduced());

  row.bias_p1 = bias_norm(rho_exact, rho_avg, Schatten::one);
  row.bias_p2 = bias_norm(rho_exact, rho_avg, Schatten::two);
  row.bias_pinf = bias_norm(rho_exact, rho_avg, Schatten::inf);

  // Monte-Carlo channel (with the per-segment depolarizing kick when the
  // imperfect-gate model is active).
  StreamFactory mc_streams{seed, stream_tag::mc};
  ChannelEstimate mc = mc_channel(scheme, r.terms, r.rho0, s.realizations,
                                  mc_streams, r.epsilon1, opt.threads);
  row.stderr_mc = mc.stderr_trace;
  row.mc_ode_distance =
      0.5 * schatten_norm(mc.output.matrix() - rho_avg.matrix(), Schatten::one);

  // State-level fidelity/trace-distance against the kicked channel when the
  // kick is on (the ODE does not model it), against the ODE average otherwise.
  const DensityMatrix& reference = r.epsilon1 ? mc.output : rho_avg;
  StateMetrics metrics = state_metrics(rho_exact, reference);
  row.trace_distance = metrics.trace_distance;
  row.fidelity = metrics.fidelity;
  if (1.0 - metrics.fidelity > metrics.trace_distance + 1e-8) {
    pr.inconsistency = true;
  }

  // Channel-distance lower bound from the superoperator forms.
  ChannelFn exact_fn = channel_from_superoperator(unitary_superoperator(u_exact.matrix()));
  ChannelFn avg_fn = channel_from_superoperator(
      averaged_superoperator(scheme, r.terms, s.steps.ode_tol));
  Philox dist_rng = StreamFactory{seed, stream_tag::distance}.stream(0);
  row.dist_lb = channel_distance_lb(exact_fn, avg_fn, dim, s.steps.distance_samples,
                                    dist_rng, s.steps.refine_steps);

  // Analytic bounds. Pole cases leave the cell empty rather than failing the
  // run; nothing is compared against an absent bound.
  BoundInputs inputs = bound_inputs_from(r.terms, r.schedule, r.lambda, Schatten::one);
  if (r.terms.count() == 2) {
    const double delta_norm = schatten_norm(
        r.terms.term(0).matrix() - r.terms.term(1).matrix(), Schatten::inf);
    row.bound_two_node =
        bound_two_node(inputs.w_sup_product, delta_norm, s.duration, r.lambda);
  }
  if (r.lambda > 2.0 * r.C) {
    row.bound_qnode = bound_balanced_qnode(r.C, s.duration, r.lambda);
  }
  if (r.lambda > 2.0 * inputs.w_norm_p * r.C) {
    row.bound_general = bound_general_p(inputs);
  }

  // Gate statistics over the same realizations the MC channel consumed
  // (streams are cheap to reconstruct, so this re-samples trajectories only).
  double cost_sum = 0.0, cand_sum = 0.0, jump_sum = 0.0;
  for (long m = 0; m < s.realizations; ++m) {
    Philox rng = mc_streams.stream(static_cast<std::uint64_t>(m));
    RealizationStats stats;
    Realization real = sample_realization(scheme, s.duration, rng, &stats);
    cost_sum += realized_gate_cost(real, r.cost);
    cand_sum += static_cast<double>(stats.candidate_events);
    jump_sum += static_cast<double>(stats.true_jumps);
  }
  const double m_count = static_cast<double>(s.realizations);
  row.gates_realized_mean = cost_sum / m_count;
  row.candidate_events_mean = cand_sum / m_count;
  row.true_jumps_mean = jump_sum / m_count;
  row.gates_bound = expected_gate_cost_bound(s.duration, r.lambda, r.cost);

  // Baselines share the exact-channel yardstick.  The sampler targets the
  // plain sum of whatever terms it is handed, so fold the t=0 weights in.
  std::optional<HamiltonianSet> weighted_terms;
  if (!s.baselines.empty()) {
    const Eigen::VectorXd w0 = r.schedule.value(0.0);
    std::vector<HermitianOperator> scaled;
    for (int i = 0; i < r.terms.count(); ++i) {
      scaled.emplace_back(Matrix(w0(i) * r.terms.term(i).matrix()));
    }
    weighted_terms.emplace(std::move(scaled));
  }
  for (size_t b = 0; b < s.baselines.size(); ++b) {
    const BaselineConfig& cfg = s.baselines[b];
    StreamFactory bl_streams{seed, stream_tag::baseline};
    const std::uint64_t index_base = static_cast<std::uint64_t>(b) *
                                     static_cast<std::uint64_t>(s.realizations);
    Matrix mean = Matrix::Zero(dim, dim);
    double bl_cost = 0.0;
    if (cfg.kind == BaselineConfig::Kind::trotter1_det) {
      Eigen::VectorXd w = r.schedule.value(0.0);
      GateSequence seq = trotter1_sequence(r.terms, w, s.duration, cfg.n,
                                           TrotterOrder::fixed);
      Matrix u = seq.product();
      mean = u * r.rho0.matrix() * u.adjoint();
      bl_cost = realized_gate_cost(seq, r.cost);
    } else {
      for (long m = 0; m < s.realizations; ++m) {
        Philox rng = bl_streams.stream(index_base + static_cast<std::uint64_t>(m));
        GateSequence seq =
            cfg.kind == BaselineConfig::Kind::qdrift
                ? qdrift_sequence(*weighted_terms, s.duration, cfg.n, rng)
                : trotter1_sequence(r.terms, r.schedule.value(0.0), s.duration,
                                    cfg.n, TrotterOrder::random_permutation, &rng);
        Matrix u = seq.product();
        mean += u * r.rho0.matrix() * u.adjoint();
        bl_cost += realized_gate_cost(seq, r.cost);
      }
      mean /= m_count;
      bl_cost /= m_count;
    }
    ReportRow bl_row = row;
    bl_row.bias_p1.reset();
    bl_row.bias_p2.reset();
    bl_row.bias_pinf.reset();
    bl_row.dist_lb.reset();
    bl_row.bound_two_node.reset();
    bl_row.bound_qnode.reset();
    bl_row.bound_general.reset();
    bl_row.trace_distance.reset();
    bl_row.fidelity.reset();
    bl_row.stderr_mc.reset();
    bl_row.mc_ode_distance.reset();
    bl_row.gates_bound.reset();
    bl_row.candidate_events_mean.reset();
    bl_row.true_jumps_mean.reset();
    bl_row.baseline_kind = BaselineConfig::kind_name(cfg.kind) + "(N=" +
                           std::to_string(cfg.n) + ")";
    bl_row.baseline_error =
        schatten_norm(mean - rho_exact.matrix(), Schatten::one);
    bl_row.gates_realized_mean = bl_cost;
    pr.baseline_rows.push_back(std::move(bl_row));
  }

  // Headline regression: no measured error lower bound may exceed a bound
  // that applies to it.  The slack absorbs integrator noise; the measured
  // values are only trustworthy to roughly the ODE tolerance.
  const double slack = 10.0 * s.steps.ode_tol;
  note_violation(pr, "bias_p1", *row.bias_p1, "bound_two_node", row.bound_two_node, slack);
  note_violation(pr, "bias_p1", *row.bias_p1, "bound_qnode", row.bound_qnode, slack);
  note_violation(pr, "bias_p1", *row.bias_p1, "bound_general", row.bound_general, slack);
  note_violation(pr, "dist_lb", *row.dist_lb, "bound_two_node", row.bound_two_node, slack);
  note_violation(pr, "dist_lb", *row.dist_lb, "bound_qnode", row.bound_qnode, slack);
  note_violation(pr, "dist_lb", *row.dist_lb, "bound_general", row.bound_general, slack);
  return pr;
}

void describe_point(std::ostringstream& out, const Scenario& s, const PointResult& pr) {
  const ReportRow& row = pr.row;
  out << "scenario " << s.name << ": Q=" << row.nodes << ", qubits=" << row.qubits
      << ", T=" << format_number(row.duration) << ", lambda=" << format_number(row.lambda)
      << ", M=" << row.realizations << ", seed=" << row.seed << "\n";
  if (row.axis != "none") {
    out << "  sweep point: " << row.axis << " = " << format_number(*row.axis_value) << "\n";
  }
  out << "  bias |exact-averaged|_p: p1=" << format_number(*row.bias_p1)
      << " p2=" << format_number(*row.bias_p2)
      << " pinf=" << format_number(*row.bias_pinf) << "\n";
  out << "  channel distance lower bound: " << format_number(*row.dist_lb) << "\n";
  out << "  analytic bounds:";
  if (row.bound_two_node) out << " two-node=" << format_number(*row.bound_two_node);
  if (row.bound_qnode) out << " qnode=" << format_number(*row.bound_qnode);
  if (row.bound_general) out << " general=" << format_number(*row.bound_general);
  if (!row.bound_two_node && !row.bound_qnode && !row.bound_general) out << " none applicable";
  out << "\n";
  out << "  state metrics: trace_distance=" << format_number(*row.trace_distance)
      << " fidelity=" << format_number(*row.fidelity) << "\n";
  out << "  monte carlo: stderr=" << format_number(*row.stderr_mc)
      << " |mc-ode| trace distance=" << format_number(*row.mc_ode_distance) << "\n";
  out << "  marginal identity max deviation: " << format_number(pr.max_marginal_dev)
      << "\n";
  out << "  gates: realized mean=" << format_number(*row.gates_realized_mean)
      << " bound=" << format_number(*row.gates_bound) << "\n";
  out << "  events per run: candidates=" << format_number(*row.candidate_events_mean)
      << " true jumps=" << format_number(*row.true_jumps_mean) << "\n";
  for (const auto& bl : pr.baseline_rows) {
    out << "  baseline " << bl.baseline_kind
        << ": error=" << format_number(*bl.baseline_error)
        << " cost=" << format_number(*bl.gates_realized_mean) << "\n";
  }
  if (pr.violation) {
    for (const auto& note : pr.violation_notes) {
      out << "  BOUND VIOLATION: " << note << "\n";
    }
  }
  if (pr.inconsistency) {
    out << "  NUMERIC INCONSISTENCY: fidelity/trace-distance relation broke\n";
  }
}

}  // namespace

RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options) {
  RunOutcome outcome;
  std::ostringstream summary;
  PointResult pr = evaluate_point(scenario, options, "none", std::nullopt);
  describe_point(summary, scenario, pr);
  outcome.rows.push_back(std::move(pr.row));
  for (auto& bl : pr.baseline_rows) outcome.rows.push_back(std::move(bl));
  outcome.bound_violation = pr.violation;
  outcome.numeric_inconsistency = pr.inconsistency;
  summary << "status: "
          << (pr.violation ? "BOUND VIOLATION"
                           : pr.inconsistency ? "NUMERIC INCONSISTENCY" : "ok")
          << "\n";
  outcome.summary = summary.str();
  return outcome;
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "lambda") return SweepAxis::lambda;
  if (name == "T") return SweepAxis::duration;
  if (name == "M") return SweepAxis::realizations;
  if (name == "N_baseline") return SweepAxis::baseline_n;
  throw ConfigError("axis", "expected lambda, T, M or N_baseline");
}

std::string sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::lambda: return "lambda";
    case SweepAxis::duration: return "T";
    case SweepAxis::realizations: return "M";
    case SweepAxis::baseline_n: return "N_baseline";
  }
  return "?";
}

RunOutcome run_sweep(const Scenario& scenario, SweepAxis axis,
                     const std::vector<double>& values, const RunOptions& options) {
  if (values.empty()) throw ConfigError("values", "sweep needs at least one value");
  RunOutcome outcome;
  std::ostringstream summary;
  const std::string axis_name = sweep_axis_name(axis);

  std::vector<double> log_lambda, log_bias;
  for (double v : values) {
    Scenario point = scenario;
    switch (axis) {
      case SweepAxis::lambda:
        if (!(v > 0)) throw ConfigError("values", "lambda values must be positive");
        point.lambda.kind = LambdaSpec::Kind::explicit_value;
        point.lambda.value = v;
        break;
      case SweepAxis::duration:
        if (!(v > 0)) throw ConfigError("values", "T values must be positive");
        point.duration = v;
        break;
      case SweepAxis::realizations:
        if (v < 1) throw ConfigError("values", "M values must be >= 1");
        point.realizations = static_cast<long>(v);
        break;
      case SweepAxis::baseline_n:
        if (v < 1) throw ConfigError("values", "N values must be >= 1");
        for (auto& bl : point.baselines) bl.n = static_cast<int>(v);
        break;
    }
    PointResult pr = evaluate_point(point, options, axis_name, v);
    describe_point(summary, point, pr);
    if (axis == SweepAxis::lambda && pr.row.bias_p1 && *pr.row.bias_p1 > 0) {
      log_lambda.push_back(std::log(pr.row.lambda));
      log_bias.push_back(std::log(*pr.row.bias_p1));
    }
    outcome.bound_violation = outcome.bound_violation || pr.violation;
    outcome.numeric_inconsistency = outcome.numeric_inconsistency || pr.inconsistency;
    outcome.rows.push_back(std::move(pr.row));
    for (auto& bl : pr.baseline_rows) outcome.rows.push_back(std::move(bl));
  }

  if (log_lambda.size() >= 2) {
    // Least-squares slope of log(bias) against log(lambda).
    const double n = static_cast<double>(log_lambda.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < log_lambda.size(); ++i) {
      sx += log_lambda[i];
      sy += log_bias[i];
      sxx += log_lambda[i] * log_lambda[i];
      sxy += log_lambda[i] * log_bias[i];
    }
    outcome.lambda_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    summary << "lambda sweep: fitted log-log slope of bias_p1 = "
            << format_number(*outcome.lambda_slope) << "\n";
  }
  summary << "status: "
          << (outcome.bound_violation
                  ? "BOUND VIOLATION"
                  : outcome.numeric_inconsistency ? "NUMERIC INCONSISTENCY" : "ok")
          << "\n";
  outcome.summary = summary.str();
  return outcome;
}

}  // namespace chainsim
