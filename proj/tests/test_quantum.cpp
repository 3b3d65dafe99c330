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
#include <stdexcept>
#include <vector>

#include "chainsim/quantum.hpp"

#include "support/oracles.hpp"

using namespace chainsim;

namespace {

std::mt19937 rng_for(const char* label) {
  std::seed_seq seq(label, label + std::char_traits<char>::length(label));
  return std::mt19937(seq);
}

Matrix random_complex(std::mt19937& gen, Eigen::Index n) {
  std::normal_distribution<double> nd;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(nd(gen), nd(gen));
  return m;
}

Matrix random_hermitian(std::mt19937& gen, Eigen::Index n) {
  Matrix m = random_complex(gen, n);
  return Matrix((m + m.adjoint()) / 2.0);
}

DensityMatrix random_density(std::mt19937& gen, Eigen::Index n) {
  Matrix v = random_complex(gen, n);
  Matrix rho = v * v.adjoint();
  rho /= rho.trace();
  return DensityMatrix(rho);
}

Vector random_state(std::mt19937& gen, Eigen::Index n) {
  std::normal_distribution<double> nd;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(nd(gen), nd(gen));
  v.normalize();
  return v;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("pauli_to_dense builds single-letter generators") {
  Matrix z = pauli_to_dense({{1.0, "Z"}}, 1).matrix();
  CHECK(max_abs(z - oracle::pauli_word("Z")) == 0.0);
  CHECK(z(0, 0) == Complex(1, 0));
  CHECK(z(1, 1) == Complex(-1, 0));

  Matrix xi_ix = pauli_to_dense({{0.5, "XI"}, {0.5, "IX"}}, 2).matrix();
  Matrix expected = 0.5 * oracle::pauli_word("XI") + 0.5 * oracle::pauli_word("IX");
  CHECK(max_abs(xi_ix - expected) < 1e-15);
}

TEST_CASE("pauli_to_dense matches the Kronecker oracle on random 3-qubit lists") {
  auto gen = rng_for("pauli3q");
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> coeff;
  const char letters[] = "IXYZ";
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PauliTerm> terms;
    Matrix expected = Matrix::Zero(8, 8);
    for (int k = 0; k < 5; ++k) {
      std::string word;
      for (int q = 0; q < 3; ++q) word.push_back(letters[letter(gen)]);
      const double c = coeff(gen);
      terms.push_back({c, word});
      expected += c * oracle::pauli_word(word);
    }
    CHECK(max_abs(pauli_to_dense(terms, 3).matrix() - expected) < 1e-12);
  }
}

TEST_CASE("pauli_to_dense rejects malformed input") {
  CHECK_THROWS_AS(pauli_to_dense({{1.0, "XZ"}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(pauli_to_dense({{1.0, "A"}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(pauli_to_dense({{1.0, std::string(11, 'Z')}}, 11),
                  std::invalid_argument);
}

TEST_CASE("matexp_hermitian handles the trivial generators") {
  Matrix zero = Matrix::Zero(4, 4);
  CHECK(max_abs(matexp_hermitian(HermitianOperator(zero), 5.0).matrix() -
                Matrix::Identity(4, 4)) < 1e-14);

  UnitaryOperator uz = matexp_hermitian(pauli_to_dense({{1.0, "Z"}}, 1), M_PI / 2);
  CHECK(std::abs(uz.matrix()(0, 0) - std::exp(Complex(0, -M_PI / 2))) < 1e-14);
  CHECK(std::abs(uz.matrix()(1, 1) - std::exp(Complex(0, M_PI / 2))) < 1e-14);
  CHECK(std::abs(uz.matrix()(0, 1)) == 0.0);
}

TEST_CASE("matexp_hermitian matches the Taylor oracle on random 8x8 inputs") {
  auto gen = rng_for("matexp8");
  for (int trial = 0; trial < 10; ++trial) {
    Matrix h = random_hermitian(gen, 8);
    const double t = 0.3;
    Matrix expected = oracle::expm_taylor(Matrix(Complex(0, -t) * h));
    Matrix got = matexp_hermitian(HermitianOperator(h), t).matrix();
    CHECK(max_abs(got - expected) < 1e-9);
    CHECK(max_abs(got * got.adjoint() - Matrix::Identity(8, 8)) < 1e-10);
  }
}

TEST_CASE("matexp_hermitian rejects non-Hermitian input") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(HermitianOperator{m}, std::invalid_argument);
}

TEST_CASE("schatten_norm examples") {
  CHECK(schatten_norm(Matrix::Identity(4, 4), Schatten::one) == doctest::Approx(4.0));
  Matrix xmz = oracle::pauli_word("X") - oracle::pauli_word("Z");
  CHECK(schatten_norm(xmz, Schatten::inf) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("schatten_norm matches the Jacobi SVD oracle on random matrices") {
  auto gen = rng_for("schatten");
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m = random_complex(gen, 6);
    CHECK(schatten_norm(m, Schatten::one) ==
          doctest::Approx(oracle::schatten(m, 1.0)).epsilon(1e-10));
    CHECK(schatten_norm(m, Schatten::two) ==
          doctest::Approx(oracle::schatten(m, 2.0)).epsilon(1e-10));
    CHECK(schatten_norm(m, Schatten::inf) ==
          doctest::Approx(
              oracle::schatten(m, std::numeric_limits<double>::infinity()))
              .epsilon(1e-10));
  }
}

TEST_CASE("schatten_norm satisfies Hoelder consistency") {
  auto gen = rng_for("hoelder");
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_complex(gen, 5);
    Matrix b = random_complex(gen, 5);
    const double lhs = schatten_norm(a * b, Schatten::one);
    CHECK(lhs <= schatten_norm(a, Schatten::one) * schatten_norm(b, Schatten::inf) +
                     1e-10);
    CHECK(lhs <= schatten_norm(a, Schatten::two) * schatten_norm(b, Schatten::two) +
                     1e-10);
  }
}

TEST_CASE("state_metrics on identical and orthogonal states") {
  auto gen = rng_for("metrics0");
  DensityMatrix rho = random_density(gen, 4);
  StateMetrics same = state_metrics(rho, rho);
  CHECK(same.trace_distance < 1e-12);
  CHECK(same.fidelity == doctest::Approx(1.0));

  Vector e0 = Vector::Zero(2);
  e0(0) = 1;
  Vector e1 = Vector::Zero(2);
  e1(1) = 1;
  StateMetrics ortho = state_metrics(DensityMatrix::pure(e0), DensityMatrix::pure(e1));
  CHECK(ortho.trace_distance == doctest::Approx(1.0));
  CHECK(ortho.fidelity < 1e-12);
}

TEST_CASE("pure-pair fidelity equals the squared overlap") {
  auto gen = rng_for("purepair");
  for (int trial = 0; trial < 20; ++trial) {
    Vector psi = random_state(gen, 8);
    Vector phi = random_state(gen, 8);
    StateMetrics m = state_metrics(DensityMatrix::pure(psi), DensityMatrix::pure(phi));
    const double overlap = std::norm(psi.dot(phi));
    CHECK(m.fidelity == doctest::Approx(overlap).epsilon(1e-10));
    // Fuchs-van de Graaf for pure states: 1 - F <= T <= sqrt(1 - F).
    CHECK(1.0 - m.fidelity <= m.trace_distance + 1e-10);
    CHECK(m.trace_distance <= std::sqrt(1.0 - m.fidelity) + 1e-8);
  }
}

TEST_CASE("mixed-state fidelity agrees with a commuting diagonal oracle") {
  // For commuting states the Uhlmann fidelity reduces to the classical
  // Bhattacharyya overlap of the spectra.
  Eigen::VectorXd p(3), q(3);
  p << 0.5, 0.3, 0.2;
  q << 0.1, 0.6, 0.3;
  Matrix rho = p.cast<Complex>().asDiagonal();
  Matrix sig = q.cast<Complex>().asDiagonal();
  double bhatta = 0.0;
  for (int i = 0; i < 3; ++i) bhatta += std::sqrt(p(i) * q(i));
  StateMetrics m = state_metrics(DensityMatrix(rho), DensityMatrix(sig));
  CHECK(m.fidelity == doctest::Approx(bhatta * bhatta).epsilon(1e-10));
  CHECK(m.trace_distance == doctest::Approx(0.5 * (p - q).cwiseAbs().sum()));
}

TEST_CASE("trace distance is a metric on random triples") {
  auto gen = rng_for("triangle");
  for (int trial = 0; trial < 100; ++trial) {
    DensityMatrix a = random_density(gen, 4);
    DensityMatrix b = random_density(gen, 4);
    DensityMatrix c = random_density(gen, 4);
    const double ab = state_metrics(a, b).trace_distance;
    const double bc = state_metrics(b, c).trace_distance;
    const double ac = state_metrics(a, c).trace_distance;
    CHECK(ac <= ab + bc + 1e-10);
    CHECK(ab >= 0.0);
    CHECK(ab == doctest::Approx(state_metrics(b, a).trace_distance).epsilon(1e-12));
  }
}

TEST_CASE("state_metrics rejects dimension mismatch") {
  auto gen = rng_for("dims");
  CHECK_THROWS_AS(state_metrics(random_density(gen, 2), random_density(gen, 4)),
                  std::invalid_argument);
}

TEST_CASE("time_ordered_unitary reduces to matexp for constant generators") {
  auto gen = rng_for("tou-const");
  Matrix h = random_hermitian(gen, 4);
  HamiltonianSchedule sched = [&](double) { return HermitianOperator(h); };
  Matrix got = time_ordered_unitary(sched, 0.0, 0.7, 64).matrix();
  Matrix expected = matexp_hermitian(HermitianOperator(h), 0.7).matrix();
  CHECK(max_abs(got - expected) < 1e-12);
  CHECK(max_abs(time_ordered_unitary(sched, 0.3, 0.3, 1).matrix() -
                Matrix::Identity(4, 4)) < 1e-14);
}

TEST_CASE("time_ordered_unitary self-converges on a ramp generator") {
  Matrix x = oracle::pauli_word("X");
  Matrix z = oracle::pauli_word("Z");
  HamiltonianSchedule sched = [&](double t) {
    return HermitianOperator(Matrix((1 - t) * x + t * z));
  };
  // Midpoint products at 2^k steps; Richardson-extrapolate the O(delta^2)
  // error away and require the limit to be stable.
  std::vector<Matrix> u;
  for (int k = 10; k <= 14; ++k) {
    u.push_back(time_ordered_unitary(sched, 0.0, 1.0, 1 << k).matrix());
  }
  std::vector<Matrix> richardson;
  for (size_t i = 0; i + 1 < u.size(); ++i) {
    richardson.push_back(Matrix((4.0 * u[i + 1] - u[i]) / 3.0));
  }
  for (size_t i = 0; i + 1 < richardson.size(); ++i) {
    CHECK(schatten_norm(richardson[i] - richardson[i + 1], Schatten::inf) < 1e-9);
  }
}

TEST_CASE("time_ordered_unitary orders factors latest-leftmost") {
  // Piecewise-constant generator: X on the first half, Z on the second.
  Matrix x = oracle::pauli_word("X");
  Matrix z = oracle::pauli_word("Z");
  HamiltonianSchedule sched = [&](double t) {
    return HermitianOperator(t < 0.5 ? x : z);
  };
  Matrix got = time_ordered_unitary(sched, 0.0, 1.0, 2).matrix();
  Matrix ux = oracle::expm_taylor(Matrix(Complex(0, -0.5) * x));
  Matrix uz = oracle::expm_taylor(Matrix(Complex(0, -0.5) * z));
  CHECK(max_abs(got - uz * ux) < 1e-12);  // Z factor acts last, sits leftmost
}

TEST_CASE("density and unitary validation") {
  Matrix not_trace_one = 2.0 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{not_trace_one}, std::invalid_argument);
  Matrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, std::invalid_argument);
  Matrix not_unitary = 0.5 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(UnitaryOperator{not_unitary}, std::invalid_argument);
}

TEST_CASE("hamiltonian set caches spectra consistently") {
  auto gen = rng_for("hamset");
  std::vector<HermitianOperator> terms;
  for (int i = 0; i < 3; ++i) terms.emplace_back(random_hermitian(gen, 4));
  HamiltonianSet set(terms);
  CHECK(set.count() == 3);
  CHECK(set.dim() == 4);
  for (int i = 0; i < 3; ++i) {
    Matrix via_cache = set.unitary(i, 0.37);
    Matrix direct = matexp_hermitian(terms[i], 0.37).matrix();
    CHECK(max_abs(via_cache - direct) < 1e-12);
    CHECK(set.term_norms()(i) ==
          doctest::Approx(terms[i].operator_norm()).epsilon(1e-12));
  }
  Eigen::VectorXd w(3);
  w << 0.2, 0.3, 0.5;
  Matrix expected = 0.2 * terms[0].matrix() + 0.3 * terms[1].matrix() +
                    0.5 * terms[2].matrix();
  CHECK(max_abs(set.weighted_sum(w).matrix() - expected) < 1e-14);
  CHECK(set.max_norm() == doctest::Approx(set.term_norms().maxCoeff()));
}

TEST_CASE("operator norm agrees with the Jacobi eigen-oracle") {
  auto gen = rng_for("opnorm");
  for (int trial = 0; trial < 10; ++trial) {
    Matrix h = random_hermitian(gen, 6);
    auto eigs = oracle::hermitian_eigenvalues(h);
    const double expected =
        std::max(std::abs(eigs.front()), std::abs(eigs.back()));
    CHECK(HermitianOperator(h).operator_norm() ==
          doctest::Approx(expected).epsilon(1e-11));
  }
}
