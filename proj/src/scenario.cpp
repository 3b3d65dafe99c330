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

#include "chainsim/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chainsim/config.hpp"
#include "chainsim/errors.hpp"

namespace chainsim {

using nlohmann::json;

WeightSchedule ScheduleSpec::build(double horizon) const {
  switch (kind) {
    case WeightSchedule::Kind::constant:
      return WeightSchedule::constant(values, horizon);
    case WeightSchedule::Kind::linear_interpolation:
      return WeightSchedule::linear(start, end, horizon);
    case WeightSchedule::Kind::clamped_adiabatic:
      return WeightSchedule::clamped_adiabatic(delta, horizon);
    case WeightSchedule::Kind::tabulated: {
      Eigen::VectorXd scaled = times * (horizon / authored_t);
      scaled(scaled.size() - 1) = horizon;  // keep the last knot exact
      return WeightSchedule::tabulated(scaled, table, horizon);
    }
  }
  throw std::logic_error("ScheduleSpec::build: bad kind");
}

int ScheduleSpec::count() const {
  switch (kind) {
    case WeightSchedule::Kind::constant:
      return static_cast<int>(values.size());
    case WeightSchedule::Kind::linear_interpolation:
      return static_cast<int>(start.size());
    case WeightSchedule::Kind::clamped_adiabatic:
      return 2;
    case WeightSchedule::Kind::tabulated:
      return static_cast<int>(table.cols());
  }
  return 0;
}

BaselineConfig::Kind BaselineConfig::kind_from_name(const std::string& name) {
  if (name == "qdrift") return Kind::qdrift;
  if (name == "trotter1-det") return Kind::trotter1_det;
  if (name == "trotter1-random") return Kind::trotter1_random;
  throw std::invalid_argument("unknown baseline kind '" + name + "'");
}

std::string BaselineConfig::kind_name(Kind k) {
  switch (k) {
    case Kind::qdrift: return "qdrift";
    case Kind::trotter1_det: return "trotter1-det";
    case Kind::trotter1_random: return "trotter1-random";
  }
  return "?";
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "." : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw ConfigError(path + key, "missing required field");
  }
  return *it;
}

double number_field(const json& j, const char* key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number()) throw ConfigError(path + key, "expected a number");
  return v.get<double>();
}

long integer_field(const json& j, const char* key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number_integer()) throw ConfigError(path + key, "expected an integer");
  return v.get<long>();
}

std::string string_field(const json& j, const char* key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_string()) throw ConfigError(path + key, "expected a string");
  return v.get<std::string>();
}

Eigen::VectorXd vector_field(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a non-empty array");
  Eigen::VectorXd out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a number");
    }
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

ScheduleSpec parse_schedule(const json& j, double horizon, const std::string& path) {
  ScheduleSpec spec;
  const std::string kind = string_field(j, "kind", path);
  try {
    spec.kind = WeightSchedule::kind_from_name(kind);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + "kind", e.what());
  }
  spec.authored_t = horizon;
  switch (spec.kind) {
    case WeightSchedule::Kind::constant:
      spec.values = vector_field(require(j, "values", path), path + "values");
      break;
    case WeightSchedule::Kind::linear_interpolation:
      spec.start = vector_field(require(j, "start", path), path + "start");
      spec.end = vector_field(require(j, "end", path), path + "end");
      break;
    case WeightSchedule::Kind::clamped_adiabatic:
      spec.delta = number_field(j, "delta", path);
      break;
    case WeightSchedule::Kind::tabulated: {
      spec.times = vector_field(require(j, "times", path), path + "times");
      const json& rows = require(j, "values", path);
      if (!rows.is_array() || rows.size() != static_cast<size_t>(spec.times.size())) {
        throw ConfigError(path + "values", "expected one row per knot time");
      }
      for (size_t r = 0; r < rows.size(); ++r) {
        Eigen::VectorXd row =
            vector_field(rows[r], path + "values[" + std::to_string(r) + "]");
        if (r == 0) spec.table.resize(rows.size(), row.size());
        if (row.size() != spec.table.cols()) {
          throw ConfigError(path + "values[" + std::to_string(r) + "]",
                            "rows have inconsistent lengths");
        }
        spec.table.row(static_cast<Eigen::Index>(r)) = row.transpose();
      }
      break;
    }
  }
  // Surface shape/positivity problems now, with the config path attached.
  try {
    spec.build(horizon);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path.substr(0, path.size() - 1), e.what());
  }
  return spec;
}

Scenario parse(const json& j) {
  Scenario s;
  const long version = integer_field(j, "spec_version", "");
  if (version != 1) throw ConfigError("spec_version", "unsupported version (expected 1)");

  s.name = string_field(j, "name", "");
  if (s.name.empty()) throw ConfigError("name", "must not be empty");

  const long qubits = integer_field(j, "qubits", "");
  if (qubits < 1 || qubits > tol::max_qubits) {
    throw ConfigError("qubits", "must lie in [1, " + std::to_string(tol::max_qubits) + "]");
  }
  s.qubits = static_cast<int>(qubits);

  const json& hams = require(j, "hamiltonians", "");
  if (!hams.is_array() || hams.empty()) {
    throw ConfigError("hamiltonians", "expected a non-empty array of term lists");
  }
  for (size_t i = 0; i < hams.size(); ++i) {
    const std::string hpath = "hamiltonians[" + std::to_string(i) + "]";
    const json& terms = hams[i];
    if (!terms.is_array() || terms.empty()) {
      throw ConfigError(hpath, "expected a non-empty array of terms");
    }
    std::vector<PauliTerm> list;
    for (size_t k = 0; k < terms.size(); ++k) {
      const std::string tpath = hpath + "[" + std::to_string(k) + "].";
      PauliTerm term;
      term.coefficient = number_field(terms[k], "coefficient", tpath);
      term.word = string_field(terms[k], "word", tpath);
      if (term.word.size() != static_cast<size_t>(s.qubits)) {
        throw ConfigError(tpath + "word", "length must equal the qubit count");
      }
      for (char c : term.word) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
          throw ConfigError(tpath + "word", "factors must be I, X, Y or Z");
        }
      }
      list.push_back(std::move(term));
    }
    s.hamiltonians.push_back(std::move(list));
  }

  s.duration = number_field(j, "T", "");
  if (!(s.duration > 0)) throw ConfigError("T", "must be positive");

  if (j.contains("renormalize")) {
    if (!j["renormalize"].is_boolean()) throw ConfigError("renormalize", "expected a boolean");
    s.renormalize = j["renormalize"].get<bool>();
  }
  if (j.contains("zero_norm_policy")) {
    const std::string p = string_field(j, "zero_norm_policy", "");
    if (p == "reject") s.zero_policy = ZeroNormPolicy::reject;
    else if (p == "drop") s.zero_policy = ZeroNormPolicy::drop;
    else throw ConfigError("zero_norm_policy", "expected 'reject' or 'drop'");
  }

  if (s.renormalize) {
    if (j.contains("weights")) {
      throw ConfigError("weights", "omit when renormalize is true; weights come from term norms");
    }
  } else {
    s.weights = parse_schedule(require(j, "weights", ""), s.duration, "weights.");
    if (s.weights.count() != static_cast<int>(s.hamiltonians.size())) {
      throw ConfigError("weights", "node count differs from the number of hamiltonians");
    }
  }

  const json& lam = require(j, "lambda", "");
  const std::string lkind = string_field(lam, "kind", "lambda.");
  if (lkind == "explicit") {
    s.lambda.kind = LambdaSpec::Kind::explicit_value;
    s.lambda.value = number_field(lam, "value", "lambda.");
    if (!(s.lambda.value > 0)) throw ConfigError("lambda.value", "must be positive");
  } else if (lkind == "from-theorem") {
    s.lambda.kind = LambdaSpec::Kind::from_theorem;
    s.lambda.epsilon0 = number_field(lam, "epsilon0", "lambda.");
    if (!(s.lambda.epsilon0 > 0)) throw ConfigError("lambda.epsilon0", "must be positive");
    const std::string model = string_field(lam, "model", "lambda.");
    if (model == "perfect") s.lambda.model = ErrorModel::perfect;
    else if (model == "imperfect") s.lambda.model = ErrorModel::imperfect;
    else throw ConfigError("lambda.model", "expected 'perfect' or 'imperfect'");
  } else {
    throw ConfigError("lambda.kind", "expected 'explicit' or 'from-theorem'");
  }

  const long m = integer_field(j, "M", "");
  if (m < 1) throw ConfigError("M", "must be >= 1");
  s.realizations = m;

  if (j.contains("steps")) {
    const json& st = j["steps"];
    if (!st.is_object()) throw ConfigError("steps", "expected an object");
    if (st.contains("ode_tol")) s.steps.ode_tol = number_field(st, "ode_tol", "steps.");
    if (st.contains("exact_steps")) {
      s.steps.exact_steps = static_cast<int>(integer_field(st, "exact_steps", "steps."));
    }
    if (st.contains("checkpoints")) {
      s.steps.checkpoints = static_cast<int>(integer_field(st, "checkpoints", "steps."));
    }
    if (st.contains("distance_samples")) {
      s.steps.distance_samples =
          static_cast<int>(integer_field(st, "distance_samples", "steps."));
    }
    if (st.contains("refine_steps")) {
      s.steps.refine_steps = static_cast<int>(integer_field(st, "refine_steps", "steps."));
    }
    if (!(s.steps.ode_tol > 0)) throw ConfigError("steps.ode_tol", "must be positive");
    if (s.steps.exact_steps < 0) throw ConfigError("steps.exact_steps", "must be >= 0");
    if (s.steps.checkpoints < 1) throw ConfigError("steps.checkpoints", "must be >= 1");
    if (s.steps.distance_samples < 1) {
      throw ConfigError("steps.distance_samples", "must be >= 1");
    }
    if (s.steps.refine_steps < 0) throw ConfigError("steps.refine_steps", "must be >= 0");
  }

  const json& seed = require(j, "seed", "");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw ConfigError("seed", "expected an unsigned integer");
  }
  if (seed.is_number_integer() && seed.get<long long>() < 0) {
    throw ConfigError("seed", "must be non-negative");
  }
  s.seed = seed.get<std::uint64_t>();

  if (j.contains("initial_state")) {
    const json& init = j["initial_state"];
    const std::string ikind = string_field(init, "kind", "initial_state.");
    if (ikind == "plus") {
      s.initial_state.kind = InitialState::Kind::plus;
    } else if (ikind == "basis") {
      s.initial_state.kind = InitialState::Kind::basis;
      const long idx = integer_field(init, "index", "initial_state.");
      if (idx < 0 || idx >= (1L << s.qubits)) {
        throw ConfigError("initial_state.index", "outside [0, 2^qubits)");
      }
      s.initial_state.index = static_cast<int>(idx);
    } else {
      throw ConfigError("initial_state.kind", "expected 'plus' or 'basis'");
    }
  }

  s.cost.alpha = 1.0;
  s.cost.beta = 1.0;
  if (j.contains("cost")) {
    const json& c = j["cost"];
    if (!c.is_object()) throw ConfigError("cost", "expected an object");
    if (c.contains("alpha")) s.cost.alpha = number_field(c, "alpha", "cost.");
    if (c.contains("beta")) s.cost.beta = number_field(c, "beta", "cost.");
    if (s.cost.alpha < 0 || s.cost.beta < 0) {
      throw ConfigError("cost", "alpha and beta must be >= 0");
    }
  }

  if (j.contains("baselines")) {
    const json& bl = j["baselines"];
    if (!bl.is_array()) throw ConfigError("baselines", "expected an array");
    for (size_t i = 0; i < bl.size(); ++i) {
      const std::string bpath = "baselines[" + std::to_string(i) + "].";
      BaselineConfig cfg;
      try {
        cfg.kind = BaselineConfig::kind_from_name(string_field(bl[i], "kind", bpath));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(bpath + "kind", e.what());
      }
      const long n = integer_field(bl[i], "N", bpath);
      if (n < 1) throw ConfigError(bpath + "N", "must be >= 1");
      cfg.n = static_cast<int>(n);
      s.baselines.push_back(cfg);
    }
  }

  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    if (!o.is_object()) throw ConfigError("outputs", "expected an object");
    if (o.contains("csv")) s.out_csv = string_field(o, "csv", "outputs.");
    if (o.contains("summary")) s.out_summary = string_field(o, "summary", "outputs.");
  }

  return s;
}

}  // namespace

Scenario parse_scenario_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  Scenario s = parse(j);
  s.config_hash = fnv1a64(j.dump());
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

}  // namespace chainsim
