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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "chainsim/bounds.hpp"
#include "chainsim/compiler.hpp"
#include "chainsim/errors.hpp"
#include "chainsim/markov.hpp"

#include "support/oracles.hpp"

using namespace chainsim;

namespace {

HamiltonianSet xz_set() {
  std::vector<HermitianOperator> terms;
  terms.push_back(pauli_to_dense({{1.0, "X"}}, 1));
  terms.push_back(pauli_to_dense({{1.0, "Z"}}, 1));
  return HamiltonianSet(std::move(terms));
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("single-segment realizations compile to one exponential") {
  HamiltonianSet set = xz_set();
  Realization r;
  r.segments = {{0, 1.7}};
  r.total = 1.7;
  GateSequence seq = compile_sequence(r, set);
  REQUIRE(seq.segments.size() == 1);
  CHECK(seq.total_time == doctest::Approx(1.7));
  Matrix expected =
      oracle::expm_taylor(Matrix(Complex(0, -1.7) * oracle::pauli_word("X")));
  CHECK(max_abs(seq.segments[0].unitary - expected) < 1e-12);
}

TEST_CASE("identical generators compose to the full evolution") {
  std::vector<HermitianOperator> terms;
  for (int i = 0; i < 3; ++i) terms.push_back(pauli_to_dense({{0.8, "Y"}}, 1));
  HamiltonianSet set(std::move(terms));
  Realization r;
  r.segments = {{0, 0.3}, {2, 0.5}, {1, 0.2}};
  r.total = 1.0;
  GateSequence seq = compile_sequence(r, set);
  Matrix expected =
      oracle::expm_taylor(Matrix(Complex(0, -0.8) * oracle::pauli_word("Y")));
  CHECK(max_abs(seq.product() - expected) < 1e-12);
}

TEST_CASE("compiled product matches step-by-step oracle multiplication") {
  HamiltonianSet set = xz_set();
  BalancedScheme scheme = make_balanced(
      WeightSchedule::constant((Eigen::VectorXd(2) << 0.5, 0.5).finished(), 1.0),
      14.0);
  Philox g(31, 4);
  Realization r = sample_realization(scheme, 1.0, g);
  GateSequence seq = compile_sequence(r, set);
  std::vector<Matrix> factors;
  for (const auto& seg : r.segments) {
    const Matrix h = seg.node == 0 ? oracle::pauli_word("X") : oracle::pauli_word("Z");
    factors.push_back(oracle::expm_taylor(Matrix(Complex(0, -seg.dwell) * h)));
  }
  CHECK(max_abs(seq.product() - oracle::product_latest_left(factors, 2)) < 1e-11);
}

TEST_CASE("rate selection reproduces the worked examples") {
  LambdaChoice a = lambda_for_target_error(1.0, 1.0, 0.1, ErrorModel::perfect);
  CHECK(a.lambda == doctest::Approx(42.0).epsilon(1e-14));
  CHECK_FALSE(a.epsilon1.has_value());

  LambdaChoice b = lambda_for_target_error(1.0, 1.0, 0.01, ErrorModel::perfect);
  CHECK(b.lambda == doctest::Approx(402.0).epsilon(1e-14));

  LambdaChoice c = lambda_for_target_error(1.0, 1.0, 0.05, ErrorModel::perfect);
  CHECK(c.lambda == doctest::Approx(82.0).epsilon(1e-14));
}

TEST_CASE("the perfect-model rate saturates the q-node bound at 2 epsilon0") {
  for (double eps0 : {0.1, 0.05, 0.01}) {
    for (double c : {0.5, 1.0, 2.0}) {
      for (double t : {0.5, 1.0, 3.0}) {
        LambdaChoice choice = lambda_for_target_error(c, t, eps0, ErrorModel::perfect);
        const double bound = bound_balanced_qnode(c, t, choice.lambda);
        CHECK(bound == doctest::Approx(2 * eps0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("the imperfect-model rate satisfies the error-budget identity") {
  for (double eps0 : {0.1, 0.05, 0.02}) {
    const double c = 1.0;
    const double t = 1.0;
    LambdaChoice choice = lambda_for_target_error(c, t, eps0, ErrorModel::imperfect);
    REQUIRE(choice.epsilon1.has_value());
    CHECK(*choice.epsilon1 > 0.0);
    CHECK(*choice.epsilon1 < 1.0);
    const double budget = 8 * c * c * t / (choice.lambda - 2 * c) +
                          choice.lambda * t * (*choice.epsilon1);
    CHECK(std::abs(budget - 2 * eps0) < 1e-10);
    // The displayed formula: lambda = (4C^2T/eps0)(1 + 1/ln(8C^2T^2/eps0)) + 2C.
    const double base = 4 * c * c * t / eps0;
    const double expected = base * (1 + 1 / std::log(8 * c * c * t * t / eps0)) + 2 * c;
    CHECK(choice.lambda == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("the imperfect model rejects budgets that break the logarithm") {
  // 8 C^2 T^2 <= eps0 e leaves no room for the log split.
  CHECK_THROWS_AS(lambda_for_target_error(0.1, 0.1, 0.5, ErrorModel::imperfect),
                  ConfigError);
}

TEST_CASE("rate selection validates its inputs") {
  CHECK_THROWS_AS(lambda_for_target_error(0.0, 1.0, 0.1, ErrorModel::perfect),
                  std::invalid_argument);
  CHECK_THROWS_AS(lambda_for_target_error(1.0, -1.0, 0.1, ErrorModel::perfect),
                  std::invalid_argument);
  CHECK_THROWS_AS(lambda_for_target_error(1.0, 1.0, 0.0, ErrorModel::perfect),
                  std::invalid_argument);
}

TEST_CASE("realized cost sums per-segment and per-time charges") {
  CostModel model{1.0, 1.0, 1.0, std::nullopt};
  Realization r;
  r.segments = {{0, 2.0}};
  r.total = 2.0;
  CHECK(realized_gate_cost(r, model) == doctest::Approx(1.0 + 2.0));

  // ln(1/epsilon1) = 1 at epsilon1 = 1/e: imperfect cost equals perfect cost.
  CostModel imperfect = model;
  imperfect.epsilon1 = std::exp(-1.0);
  CHECK(realized_gate_cost(r, imperfect) == doctest::Approx(realized_gate_cost(r, model)));

  HamiltonianSet set = xz_set();
  Realization two;
  two.segments = {{0, 0.25}, {1, 0.75}};
  two.total = 1.0;
  GateSequence seq = compile_sequence(two, set);
  CHECK(realized_gate_cost(seq, model) == doctest::Approx(2.0 + 1.0));
  CHECK(realized_gate_cost(two, model) == doctest::Approx(realized_gate_cost(seq, model)));
}

TEST_CASE("mean realized cost sits between the bound and its merge correction") {
  const double lambda = 12.0;
  const double horizon = 1.0;
  Eigen::VectorXd w(3);
  w << 0.2, 0.3, 0.5;
  BalancedScheme scheme = make_balanced(WeightSchedule::constant(w, horizon), lambda);
  CostModel model{1.0, 1.0, 1.0, std::nullopt};
  const int n = 10000;
  StreamFactory streams{77, stream_tag::stats};
  double sum = 0.0;
  for (int m = 0; m < n; ++m) {
    Philox g = streams.stream(m);
    sum += realized_gate_cost(sample_realization(scheme, horizon, g), model);
  }
  const double mean = sum / n;
  const double bound = expected_gate_cost_bound(horizon, lambda, model);
  CHECK(bound == doctest::Approx(horizon * (model.alpha * lambda + model.beta * model.C)));
  // Segment count fluctuates like Poisson(lambda T); give the mean 3 sigma.
  const double sigma = model.alpha * std::sqrt(lambda * horizon / n);
  CHECK(mean <= bound + 3 * sigma);
  // Merging self-transitions removes about alpha lambda T sum(w^2) of cost.
  const double merge_correction = model.alpha * lambda * horizon * w.squaredNorm();
  CHECK(mean >= bound - merge_correction - 3 * sigma);
}

TEST_CASE("expected cost bound scales with the imperfect factor") {
  CostModel model{2.0, 0.5, 3.0, std::nullopt};
  CHECK(expected_gate_cost_bound(2.0, 10.0, model) ==
        doctest::Approx(2.0 * (2.0 * 10.0 + 0.5 * 3.0)));
  model.epsilon1 = 1e-3;
  CHECK(expected_gate_cost_bound(2.0, 10.0, model) ==
        doctest::Approx(2.0 * (2.0 * 10.0 + 0.5 * 3.0) * std::log(1e3)));
}

TEST_CASE("cost model validation") {
  CostModel bad{-1.0, 1.0, 1.0, std::nullopt};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CostModel bad_eps{1.0, 1.0, 1.0, 1.5};
  CHECK_THROWS_AS(bad_eps.validate(), std::invalid_argument);
  CostModel bad_c{1.0, 1.0, 0.0, std::nullopt};
  CHECK_THROWS_AS(bad_c.validate(), std::invalid_argument);
}

TEST_CASE("renormalization reproduces the norm-1-and-3 example") {
  std::vector<HermitianOperator> terms;
  terms.push_back(pauli_to_dense({{1.0, "X"}}, 1));   // norm 1
  terms.push_back(pauli_to_dense({{3.0, "Z"}}, 1));   // norm 3
  Renormalized r = renormalize_decomposition(terms);
  CHECK(r.c == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.weights(0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.weights(1) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r.terms[0].operator_norm() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.terms[1].operator_norm() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.kept == std::vector<int>{0, 1});
}

TEST_CASE("renormalizing a single term is the identity up to scale") {
  std::vector<HermitianOperator> terms;
  terms.push_back(pauli_to_dense({{2.5, "Y"}}, 1));
  Renormalized r = renormalize_decomposition(terms);
  CHECK(r.weights(0) == doctest::Approx(1.0));
  CHECK(r.c == doctest::Approx(2.5));
  CHECK(max_abs(r.terms[0].matrix() - terms[0].matrix()) < 1e-12);
}

TEST_CASE("renormalization reconstructs the operator sum exactly") {
  auto gen = std::mt19937(12345);
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> coeff;
  const char letters[] = "IXYZ";
  std::vector<HermitianOperator> terms;
  Matrix total = Matrix::Zero(4, 4);
  for (int i = 0; i < 5; ++i) {
    std::vector<PauliTerm> list;
    for (int k = 0; k < 3; ++k) {
      std::string word;
      word.push_back(letters[letter(gen)]);
      word.push_back(letters[letter(gen)]);
      list.push_back({coeff(gen), word});
    }
    HermitianOperator h = pauli_to_dense(list, 2);
    total += h.matrix();
    terms.push_back(h);
  }
  Renormalized r = renormalize_decomposition(terms);
  Matrix rebuilt = Matrix::Zero(4, 4);
  for (size_t i = 0; i < r.terms.size(); ++i) {
    rebuilt += r.weights(static_cast<Eigen::Index>(i)) * r.terms[i].matrix();
  }
  CHECK(max_abs(rebuilt - total) < 1e-12);
}

TEST_CASE("zero-norm terms follow the configured policy") {
  std::vector<HermitianOperator> terms;
  terms.push_back(pauli_to_dense({{1.0, "X"}}, 1));
  terms.push_back(HermitianOperator(Matrix::Zero(2, 2)));
  CHECK_THROWS_AS(renormalize_decomposition(terms, ZeroNormPolicy::reject),
                  std::invalid_argument);
  Renormalized dropped = renormalize_decomposition(terms, ZeroNormPolicy::drop);
  CHECK(dropped.kept == std::vector<int>{0});
  CHECK(dropped.weights.size() == 1);
  CHECK(dropped.c == doctest::Approx(1.0));
}
