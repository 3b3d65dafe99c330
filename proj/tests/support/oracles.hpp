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

// Slow reference implementations used only by tests. Each one is written
// from the textbook definition with a different algorithm than the library
// uses, so agreement is evidence rather than tautology.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Kronecker product by explicit index arithmetic.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix pauli_factor(char c) {
  Matrix m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
  }
  return m;
}

/// Dense matrix for a Pauli word, first letter acting on the most
/// significant qubit.
inline Matrix pauli_word(const std::string& word) {
  Matrix m = Matrix::Identity(1, 1);
  for (char c : word) m = kron(m, pauli_factor(c));
  return m;
}

/// e^M by scaling-and-squaring around a plain Taylor series.
inline Matrix expm_taylor(const Matrix& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // induced inf-norm
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Matrix a = m * scale;
  Matrix sum = Matrix::Identity(m.rows(), m.cols());
  Matrix term = sum;
  for (int k = 1; k <= 30; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi sweeps.
inline std::vector<double> hermitian_eigenvalues(Matrix a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("square matrices only");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) < 1e-15 * scale) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex beta = a(p, q);
        const double r = std::abs(beta);
        if (r < 1e-300) continue;
        const Complex phase = beta / r;  // beta = r * phase
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        const double tau = (gamma - alpha) / (2.0 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary on the (p, q) plane: U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const Complex upp(c, 0.0);
        const Complex upq(s, 0.0);
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {  // columns: A <- A U
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // rows: A <- U^dagger A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
      }
    }
  }
  std::vector<double> eigs(n);
  for (Eigen::Index i = 0; i < n; ++i) eigs[i] = a(i, i).real();
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

/// Singular values (descending) as square roots of eigenvalues of A^dagger A.
inline std::vector<double> singular_values(const Matrix& m) {
  std::vector<double> eigs = hermitian_eigenvalues(m.adjoint() * m);
  std::vector<double> out;
  for (auto it = eigs.rbegin(); it != eigs.rend(); ++it) {
    out.push_back(std::sqrt(std::max(0.0, *it)));
  }
  return out;
}

inline double schatten(const Matrix& m, double p) {
  std::vector<double> sv = singular_values(m);
  if (std::isinf(p)) return sv.empty() ? 0.0 : sv.front();
  double acc = 0.0;
  for (double s : sv) acc += std::pow(s, p);
  return std::pow(acc, 1.0 / p);
}

/// Classic fixed-step RK4 for a complex vector ODE.
inline Vector rk4(const std::function<Vector(double, const Vector&)>& f,
                  Vector y, double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    const Vector k1 = f(t, y);
    const Vector k2 = f(t + h / 2, y + (h / 2) * k1);
    const Vector k3 = f(t + h / 2, y + (h / 2) * k2);
    const Vector k4 = f(t + h, y + h * k3);
    y += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    t += h;
  }
  return y;
}

/// Ordered product with the latest factor applied on the left.
inline Matrix product_latest_left(const std::vector<Matrix>& factors,
                                  Eigen::Index dim) {
  Matrix u = Matrix::Identity(dim, dim);
  for (const Matrix& f : factors) u = f * u;
  return u;
}

/// Sample mean and standard deviation of a sequence of reals.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

inline MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return out;
}

}  // namespace oracle
