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

#include "chainsim/quantum.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace chainsim {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
  }
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
  require_square(m_, "HermitianOperator");
  if (max_abs(m_ - m_.adjoint()) > tol::hermiticity) {
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
  }
  // Symmetrize so downstream spectral solves see an exactly Hermitian input.
  m_ = ((m_ + m_.adjoint()) / 2.0).eval();
}

double HermitianOperator::operator_norm() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  if (max_abs(m_ - m_.adjoint()) > tol::hermiticity) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  m_ = ((m_ + m_.adjoint()) / 2.0).eval();
  if (std::abs(m_.trace().real() - 1.0) > tol::trace_one ||
      std::abs(m_.trace().imag()) > tol::trace_one) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < tol::density_eig_floor) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const Vector& state) {
  const double n = state.norm();
  if (n == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero state");
  Vector psi = state / n;
  return DensityMatrix(psi * psi.adjoint());
}

UnitaryOperator::UnitaryOperator(Matrix m) : m_(std::move(m)) {
  require_square(m_, "UnitaryOperator");
  Matrix gram = m_.adjoint() * m_;
  gram -= Matrix::Identity(m_.rows(), m_.cols());
  if (max_abs(gram) > tol::unitarity) {
    throw std::invalid_argument("UnitaryOperator: matrix is not unitary");
  }
}

HermitianOperator pauli_to_dense(const std::vector<PauliTerm>& terms, int qubits) {
  if (qubits < 1 || qubits > tol::max_qubits) {
    throw std::invalid_argument("pauli_to_dense: qubit count out of range");
  }
  const Eigen::Index dim = Eigen::Index(1) << qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& term : terms) {
    if (static_cast<int>(term.word.size()) != qubits) {
      throw std::invalid_argument("pauli_to_dense: word '" + term.word +
                                  "' does not have one factor per qubit");
    }
    // Column j of the string maps |j> to phase * |j ^ flip>, with word[0]
    // acting on the most significant bit.
    Eigen::Index flip = 0;
    for (int q = 0; q < qubits; ++q) {
      const char c = term.word[q];
      if (c == 'X' || c == 'Y') flip |= Eigen::Index(1) << (qubits - 1 - q);
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw std::invalid_argument("pauli_to_dense: bad factor in word '" + term.word + "'");
      }
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
      Complex phase = 1.0;
      for (int q = 0; q < qubits; ++q) {
        const bool bit = (j >> (qubits - 1 - q)) & 1;
        switch (term.word[q]) {
          case 'Y':
            phase *= bit ? Complex(0, -1) : Complex(0, 1);
            break;
          case 'Z':
            if (bit) phase = -phase;
            break;
          default:
            break;
        }
      }
      m(j ^ flip, j) += term.coefficient * phase;
    }
  }
  return HermitianOperator(std::move(m));
}

UnitaryOperator matexp_hermitian(const HermitianOperator& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("matexp_hermitian: eigensolver failed");
  }
  const auto& v = es.eigenvectors();
  Vector phases(h.dim());
  for (Eigen::Index k = 0; k < h.dim(); ++k) {
    phases(k) = std::exp(Complex(0, -es.eigenvalues()(k) * t));
  }
  return UnitaryOperator(v * phases.asDiagonal() * v.adjoint());
}

double schatten_norm(const Matrix& m, Schatten p) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  switch (p) {
    case Schatten::one:
      return s.sum();
    case Schatten::two:
      return s.norm();
    case Schatten::inf:
      return s.size() > 0 ? s(0) : 0.0;
  }
  return 0.0;
}

namespace {

// Largest eigenvalue and its eigenvector.
std::pair<double, Vector> top_eigenpair(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Eigen::Index last = m.rows() - 1;
  return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

Matrix hermitian_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

StateMetrics state_metrics(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("state_metrics: dimension mismatch");
  }
  StateMetrics out;
  out.trace_distance = 0.5 * schatten_norm(rho.matrix() - sigma.matrix(), Schatten::one);

  auto [lr, vr] = top_eigenpair(rho.matrix());
  auto [ls, vs] = top_eigenpair(sigma.matrix());
  const bool rho_pure = lr > 1.0 - 1e-8;
  const bool sigma_pure = ls > 1.0 - 1e-8;
  if (rho_pure || sigma_pure) {
    const Vector& psi = rho_pure ? vr : vs;
    const Matrix& other = rho_pure ? sigma.matrix() : rho.matrix();
    out.fidelity = (psi.adjoint() * other * psi)(0, 0).real();
    // With one argument pure the fidelity obeys 1 - F <= T(rho, sigma).
    if (1.0 - out.fidelity > out.trace_distance + 1e-8) {
      throw std::logic_error("state_metrics: fidelity/trace-distance bound violated");
    }
  } else {
    Matrix root = hermitian_sqrt(rho.matrix());
    Eigen::SelfAdjointEigenSolver<Matrix> es(root * sigma.matrix() * root,
                                             Eigen::EigenvaluesOnly);
    const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    out.fidelity = tr * tr;
  }
  out.fidelity = std::min(1.0, std::max(0.0, out.fidelity));
  return out;
}

UnitaryOperator time_ordered_unitary(const HamiltonianSchedule& h, double t0,
                                     double t1, int steps) {
  if (steps < 1) throw std::invalid_argument("time_ordered_unitary: steps < 1");
  if (t1 < t0) throw std::invalid_argument("time_ordered_unitary: reversed interval");
  const double dt = (t1 - t0) / steps;
  HermitianOperator first = h(t0 + dt / 2.0);
  Matrix u = matexp_hermitian(first, dt).matrix();
  for (int k = 1; k < steps; ++k) {
    const double mid = t0 + (k + 0.5) * dt;
    u = matexp_hermitian(h(mid), dt).matrix() * u;
  }
  return UnitaryOperator(std::move(u));
}

HamiltonianSet::HamiltonianSet(std::vector<HermitianOperator> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("HamiltonianSet: no terms");
  for (const auto& t : terms_) {
    if (t.dim() != terms_[0].dim()) {
      throw std::invalid_argument("HamiltonianSet: dimension mismatch between terms");
    }
  }
  spectra_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(t.matrix());
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("HamiltonianSet: eigensolver failed");
    }
    spectra_.push_back({es.eigenvalues(), es.eigenvectors()});
  }
}

Matrix HamiltonianSet::unitary(int node, double tau) const {
  const Spectral& s = spectra_.at(node);
  Vector phases(s.eigenvalues.size());
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
    phases(k) = std::exp(Complex(0, -s.eigenvalues(k) * tau));
  }
  return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

HermitianOperator HamiltonianSet::weighted_sum(const Eigen::VectorXd& w) const {
  if (w.size() != static_cast<Eigen::Index>(terms_.size())) {
    throw std::invalid_argument("weighted_sum: weight count mismatch");
  }
  Matrix acc = Matrix::Zero(dim(), dim());
  for (size_t i = 0; i < terms_.size(); ++i) {
    acc += w(static_cast<Eigen::Index>(i)) * terms_[i].matrix();
  }
  return HermitianOperator(std::move(acc));
}

double HamiltonianSet::max_norm() const { return term_norms().maxCoeff(); }

Eigen::VectorXd HamiltonianSet::term_norms() const {
  Eigen::VectorXd norms(terms_.size());
  for (size_t i = 0; i < terms_.size(); ++i) {
    norms(static_cast<Eigen::Index>(i)) =
        spectra_[i].eigenvalues.cwiseAbs().maxCoeff();
  }
  return norms;
}

}  // namespace chainsim
