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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainsim/baselines.hpp"
#include "chainsim/bounds.hpp"
#include "chainsim/channels.hpp"
#include "chainsim/errors.hpp"
#include "chainsim/runner.hpp"

#ifndef CHAINSIM_GIT_DESCRIBE
#define CHAINSIM_GIT_DESCRIBE "unknown"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBoundViolation = 3;
constexpr int kExitNoConvergence = 4;

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out_dir = ".";
};

chainsim::Scenario load(const CommonArgs& args) {
  chainsim::Scenario s = chainsim::load_scenario_file(args.config);
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string csv_path(const CommonArgs& args, const chainsim::Scenario& s,
                     const std::string& stem_suffix) {
  const std::string stem = s.out_csv.empty() ? s.name + stem_suffix + ".csv" : s.out_csv;
  return (std::filesystem::path(args.out_dir) / stem).string();
}

std::string summary_path(const CommonArgs& args, const chainsim::Scenario& s,
                         const std::string& stem_suffix) {
  const std::string stem =
      s.out_summary.empty() ? s.name + stem_suffix + "_summary.txt" : s.out_summary;
  return (std::filesystem::path(args.out_dir) / stem).string();
}

int finish_outcome(const CommonArgs& args, const chainsim::Scenario& s,
                   const chainsim::RunOutcome& outcome, const std::string& stem_suffix) {
  chainsim::ReportMeta meta;
  meta.seed = args.seed.value_or(s.seed);
  meta.git_describe = CHAINSIM_GIT_DESCRIBE;
  meta.config_hash = s.config_hash;
  std::filesystem::create_directories(args.out_dir);
  const std::string csv = chainsim::emit_csv(outcome.rows, meta);
  write_file(csv_path(args, s, stem_suffix), csv);
  write_file(summary_path(args, s, stem_suffix), outcome.summary);
  std::cout << outcome.summary;
  std::cout << "wrote " << csv_path(args, s, stem_suffix) << "\n";
  if (outcome.numeric_inconsistency) return kExitNoConvergence;
  if (outcome.bound_violation) return kExitBoundViolation;
  return kExitOk;
}

int do_validate(const CommonArgs& args) {
  chainsim::Scenario s = load(args);
  chainsim::ResolvedScenario r = chainsim::resolve_scenario(s);
  chainsim::BalancedScheme scheme = chainsim::make_balanced(r.schedule, r.lambda);
  (void)scheme;
  std::cout << "ok: " << s.name << " (Q=" << r.terms.count() << ", qubits=" << s.qubits
            << ", lambda=" << chainsim::format_number(r.lambda) << ", C="
            << chainsim::format_number(r.C) << ")\n";
  return kExitOk;
}

int do_sample(const CommonArgs& args) {
  chainsim::Scenario s = load(args);
  chainsim::ResolvedScenario r = chainsim::resolve_scenario(s);
  chainsim::BalancedScheme scheme = chainsim::make_balanced(r.schedule, r.lambda);
  chainsim::Philox rng =
      chainsim::StreamFactory{args.seed.value_or(s.seed), chainsim::stream_tag::sample}
          .stream(0);
  chainsim::RealizationStats stats;
  chainsim::Realization real = chainsim::sample_realization(scheme, s.duration, rng, &stats);
  std::cout << "# node dwell\n";
  for (const auto& seg : real.segments) {
    std::cout << seg.node << " " << chainsim::format_number(seg.dwell) << "\n";
  }
  std::cout << "# segments: " << real.segments.size()
            << ", candidate events: " << stats.candidate_events
            << ", true jumps: " << stats.true_jumps << "\n";
  return kExitOk;
}

int do_compile(const CommonArgs& args) {
  chainsim::Scenario s = load(args);
  chainsim::ResolvedScenario r = chainsim::resolve_scenario(s);
  chainsim::BalancedScheme scheme = chainsim::make_balanced(r.schedule, r.lambda);
  chainsim::Philox rng =
      chainsim::StreamFactory{args.seed.value_or(s.seed), chainsim::stream_tag::sample}
          .stream(0);
  chainsim::Realization real = chainsim::sample_realization(scheme, s.duration, rng);
  chainsim::GateSequence seq = chainsim::compile_sequence(real, r.terms);

  nlohmann::json gates = nlohmann::json::array();
  for (const auto& seg : seq.segments) {
    gates.push_back({{"node", seg.node}, {"dwell", seg.dwell}});
  }
  nlohmann::json doc{{"scenario", s.name},
                     {"total_time", seq.total_time},
                     {"gates", gates}};
  std::cout << doc.dump(2) << "\n";
  std::cout << "# " << seq.segments.size() << " segments, realized cost "
            << chainsim::format_number(chainsim::realized_gate_cost(seq, r.cost)) << "\n";
  return kExitOk;
}

int do_bounds(const CommonArgs& args) {
  chainsim::Scenario s = load(args);
  chainsim::ResolvedScenario r = chainsim::resolve_scenario(s);
  chainsim::BoundInputs inputs = chainsim::bound_inputs_from(
      r.terms, r.schedule, r.lambda, chainsim::Schatten::one);
  std::cout << "scenario " << s.name << ": lambda=" << chainsim::format_number(r.lambda)
            << " C=" << chainsim::format_number(r.C)
            << " T=" << chainsim::format_number(s.duration) << "\n";
  if (r.epsilon1) {
    std::cout << "epsilon1 = " << chainsim::format_number(*r.epsilon1) << "\n";
  }
  if (r.terms.count() == 2) {
    const double delta_norm = chainsim::schatten_norm(
        r.terms.term(0).matrix() - r.terms.term(1).matrix(), chainsim::Schatten::inf);
    std::cout << "two-node bound: "
              << chainsim::format_number(chainsim::bound_two_node(
                     inputs.w_sup_product, delta_norm, s.duration, r.lambda))
              << "\n";
  }
  if (r.lambda > 2 * r.C) {
    std::cout << "qnode bound: "
              << chainsim::format_number(
                     chainsim::bound_balanced_qnode(r.C, s.duration, r.lambda))
              << "\n";
  } else {
    std::cout << "qnode bound: not applicable (lambda <= 2C pole)\n";
  }
  if (r.lambda > 2 * inputs.w_norm_p * r.C) {
    std::cout << "general bound (p=1): "
              << chainsim::format_number(chainsim::bound_general_p(inputs)) << "\n";
  } else {
    std::cout << "general bound (p=1): not applicable (pole)\n";
  }
  std::cout << "gate-cost bound: "
            << chainsim::format_number(
                   chainsim::expected_gate_cost_bound(s.duration, r.lambda, r.cost))
            << "\n";
  return kExitOk;
}

int do_run(const CommonArgs& args) {
  chainsim::Scenario s = load(args);
  chainsim::RunOptions opt;
  opt.threads = args.threads;
  opt.seed_override = args.seed;
  opt.git_describe = CHAINSIM_GIT_DESCRIBE;
  chainsim::RunOutcome outcome = chainsim::run_scenario(s, opt);
  return finish_outcome(args, s, outcome, "");
}

int do_sweep(const CommonArgs& args, const std::string& axis_name,
             const std::string& values_text) {
  chainsim::Scenario s = load(args);
  chainsim::SweepAxis axis = chainsim::sweep_axis_from_name(axis_name);
  std::vector<double> values;
  std::stringstream ss(values_text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw chainsim::ConfigError("values", "'" + item + "' is not a number");
    }
  }
  if (values.empty()) throw chainsim::ConfigError("values", "no sweep values given");

  chainsim::RunOptions opt;
  opt.threads = args.threads;
  opt.seed_override = args.seed;
  opt.git_describe = CHAINSIM_GIT_DESCRIBE;
  chainsim::RunOutcome outcome = chainsim::run_sweep(s, axis, values, opt);
  return finish_outcome(args, s, outcome, "-sweep-" + axis_name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chainsim: stochastic compilation of weighted Hamiltonian sums"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string axis;
  std::string values;

  auto add_common = [&](CLI::App* cmd, bool with_out) {
    cmd->add_option("--config", args.config, "scenario JSON path")->required();
    cmd->add_option("--seed", args.seed, "override the scenario seed");
    cmd->add_option("--threads", args.threads, "worker threads for Monte-Carlo batches")
        ->check(CLI::PositiveNumber);
    if (with_out) cmd->add_option("--out", args.out_dir, "output directory");
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a scenario");
  add_common(validate, false);
  CLI::App* sample = app.add_subcommand("sample", "print one sampled realization");
  add_common(sample, false);
  CLI::App* compile = app.add_subcommand("compile", "emit the gate list for one realization");
  add_common(compile, false);
  CLI::App* run = app.add_subcommand("run", "full evaluation of a scenario");
  add_common(run, true);
  CLI::App* sweep = app.add_subcommand("sweep", "run the scenario along an axis");
  add_common(sweep, true);
  sweep->add_option("--axis", axis, "lambda | T | M | N_baseline")->required();
  sweep->add_option("--values", values, "comma-separated axis values")->required();
  CLI::App* bounds = app.add_subcommand("bounds", "print analytic bounds only");
  add_common(bounds, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return do_validate(args);
    if (sample->parsed()) return do_sample(args);
    if (compile->parsed()) return do_compile(args);
    if (run->parsed()) return do_run(args);
    if (sweep->parsed()) return do_sweep(args, axis, values);
    if (bounds->parsed()) return do_bounds(args);
  } catch (const chainsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const chainsim::RateError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const chainsim::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
