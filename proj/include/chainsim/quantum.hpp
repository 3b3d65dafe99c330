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

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chainsim/config.hpp"

namespace chainsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Schatten index: p = 1 (trace norm), 2 (Frobenius), infinity (operator norm).
enum class Schatten { one, two, inf };

/// One weighted Pauli string, e.g. (0.5, "XZI").
struct PauliTerm {
  double coefficient = 0.0;
  std::string word;  // over {I, X, Y, Z}, length = qubit count
};

/// Dense Hermitian matrix on up to 10 qubits. Construction enforces
/// hermiticity elementwise to 1e-12 and the power-of-two dimension cap.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  /// Largest |eigenvalue|, i.e. the operator norm of a Hermitian matrix.
  double operator_norm() const;

 private:
  Matrix m_;
};

/// Density matrix: Hermitian, trace 1 (to 1e-10), eigenvalues >= -1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  static DensityMatrix pure(const Vector& state);

 private:
  Matrix m_;
};

/// Unitary matrix, checked against ‖U†U - I‖_∞ < 1e-10 at construction.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  /// U ρ U†.
  Matrix conjugate(const Matrix& rho) const { return m_ * rho * m_.adjoint(); }

 private:
  Matrix m_;
};

/// Σ_k c_k P_k as a dense matrix. Throws on word-length mismatch or n > 10.
HermitianOperator pauli_to_dense(const std::vector<PauliTerm>& terms, int qubits);

/// e^{-iHt} by spectral decomposition of H.
UnitaryOperator matexp_hermitian(const HermitianOperator& h, double t);

/// p-norm of the singular values of m.
double schatten_norm(const Matrix& m, Schatten p);

struct StateMetrics {
  double trace_distance = 0.0;
  double fidelity = 0.0;
};

/// Trace distance ½‖ρ-σ‖₁ and Uhlmann fidelity (tr√(√ρ σ √ρ))². When either
/// argument is numerically rank one the pure-state shortcut ⟨ψ|·|ψ⟩ is used
/// and the Fuchs-van de Graaf inequality 1-F <= T(ρ,σ) is checked.
StateMetrics state_metrics(const DensityMatrix& rho, const DensityMatrix& sigma);

using HamiltonianSchedule = std::function<HermitianOperator(double)>;

/// Time-ordered evolution over [t0, t1]: midpoint product of `steps` factors
/// e^{-iH(t_k + δ/2) δ}, latest factor leftmost.
UnitaryOperator time_ordered_unitary(const HamiltonianSchedule& h, double t0,
                                     double t1, int steps);

/// Eigendecompositions of a fixed set of Hamiltonians, so that segment
/// unitaries e^{-iH_k τ} can be formed repeatedly without re-solving.
class HamiltonianSet {
 public:
  explicit HamiltonianSet(std::vector<HermitianOperator> terms);

  int count() const { return static_cast<int>(terms_.size()); }
  Eigen::Index dim() const { return terms_.empty() ? 0 : terms_[0].dim(); }
  const HermitianOperator& term(int i) const { return terms_.at(i); }
  const std::vector<HermitianOperator>& terms() const { return terms_; }

  /// e^{-iH_node tau} from the cached spectral decomposition.
  Matrix unitary(int node, double tau) const;

  /// Σ_i w_i H_i.
  HermitianOperator weighted_sum(const Eigen::VectorXd& w) const;

  /// max_i ‖H_i‖_∞.
  double max_norm() const;

  /// Per-term operator norms ‖H_i‖_∞.
  Eigen::VectorXd term_norms() const;

 private:
  struct Spectral {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
  };
  std::vector<HermitianOperator> terms_;
  std::vector<Spectral> spectra_;
};

}  // namespace chainsim
