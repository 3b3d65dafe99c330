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

#include "chainsim/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "chainsim/config.hpp"
#include "chainsim/errors.hpp"

namespace chainsim {

Matrix BlockState::reduced() const {
  if (blocks.empty()) throw std::logic_error("BlockState::reduced: empty");
  Matrix acc = blocks[0];
  for (size_t i = 1; i < blocks.size(); ++i) acc += blocks[i];
  return acc;
}

Eigen::VectorXd BlockState::traces() const {
  Eigen::VectorXd tr(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i) {
    tr(static_cast<Eigen::Index>(i)) = blocks[i].trace().real();
  }
  return tr;
}

void BlockState::validate() const {
  if (blocks.empty()) throw std::invalid_argument("BlockState: no blocks");
  Complex trace_sum = 0.0;
  for (const auto& b : blocks) {
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > tol::block_hermiticity) {
      throw std::invalid_argument("BlockState: block is not Hermitian");
    }
    Matrix sym = (b + b.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < tol::block_eig_floor) {
      throw std::invalid_argument("BlockState: block eigenvalue below floor");
    }
    trace_sum += b.trace();
  }
  if (std::abs(trace_sum - Complex(1.0, 0.0)) > tol::block_trace_sum) {
    throw std::invalid_argument("BlockState: block traces do not sum to 1");
  }
}

DensityMatrix exact_channel(const HamiltonianSchedule& h, double duration,
                            const DensityMatrix& rho0, int steps) {
  UnitaryOperator u = time_ordered_unitary(h, 0.0, duration, steps);
  return DensityMatrix(u.conjugate(rho0.matrix()));
}

UnitaryOperator exact_unitary_adaptive(const HamiltonianSchedule& h, double t0,
                                       double t1, double tolerance,
                                       int initial_steps) {
  int steps = std::max(1, initial_steps);
  Matrix u = time_ordered_unitary(h, t0, t1, steps).matrix();
  for (int d = 0; d < tol::max_ode_doublings; ++d) {
    steps *= 2;
    Matrix u2 = time_ordered_unitary(h, t0, t1, steps).matrix();
    if ((u2 - u).cwiseAbs().maxCoeff() < tolerance) return UnitaryOperator(std::move(u2));
    u = std::move(u2);
  }
  throw ConvergenceError("exact_unitary_adaptive: step doubling did not settle");
}

namespace {

using Blocks = std::vector<Matrix>;

// dy <- f(t, y) for the node-resolved equation of motion.
using BlockRhs = std::function<void(double, const Blocks&, Blocks&)>;

Blocks zeros_like(const Blocks& y) {
  Blocks z;
  z.reserve(y.size());
  for (const auto& b : y) z.push_back(Matrix::Zero(b.rows(), b.cols()));
  return z;
}

// Fixed-step RK4 over [0, duration]; returns the n_check+1 checkpoint states.
// n_steps must be a positive multiple of n_check.
std::vector<Blocks> rk4_blocks(const BlockRhs& rhs, const Blocks& y0, double duration,
                               int n_check, long n_steps) {
  const double h = duration / static_cast<double>(n_steps);
  const long per_check = n_steps / n_check;
  std::vector<Blocks> out;
  out.reserve(n_check + 1);
  out.push_back(y0);

  Blocks y = y0;
  Blocks k1 = zeros_like(y0), k2 = zeros_like(y0), k3 = zeros_like(y0),
         k4 = zeros_like(y0), tmp = zeros_like(y0);
  const size_t q = y0.size();
  for (long s = 0; s < n_steps; ++s) {
    const double t = h * static_cast<double>(s);
    rhs(t, y, k1);
    for (size_t i = 0; i < q; ++i) tmp[i] = y[i] + (h / 2) * k1[i];
    rhs(t + h / 2, tmp, k2);
    for (size_t i = 0; i < q; ++i) tmp[i] = y[i] + (h / 2) * k2[i];
    rhs(t + h / 2, tmp, k3);
    for (size_t i = 0; i < q; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(t + h, tmp, k4);
    for (size_t i = 0; i < q; ++i) {
      y[i] += (h / 6) * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    if ((s + 1) % per_check == 0) out.push_back(y);
  }
  return out;
}

double checkpoint_distance(const std::vector<Blocks>& a, const std::vector<Blocks>& b) {
  double worst = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    double sum = 0.0;
    for (size_t i = 0; i < a[k].size(); ++i) {
      sum += schatten_norm(a[k][i] - b[k][i], Schatten::one);
    }
    worst = std::max(worst, sum);
  }
  return worst;
}

struct RawTrajectory {
  std::vector<Blocks> checkpoints;
  long steps_used = 0;
};

// Global step halving: integrate with n and 2n steps until every checkpoint
// agrees below `tolerance` in summed trace norm.
RawTrajectory integrate_adaptive(const BlockRhs& rhs, const Blocks& y0, double duration,
                                 int n_check, long n_initial, double tolerance) {
  long n = std::max<long>(n_check, n_initial);
  n = ((n + n_check - 1) / n_check) * n_check;
  std::vector<Blocks> sol = rk4_blocks(rhs, y0, duration, n_check, n);
  for (int d = 0; d < tol::max_ode_doublings; ++d) {
    std::vector<Blocks> sol2 = rk4_blocks(rhs, y0, duration, n_check, 2 * n);
    if (checkpoint_distance(sol, sol2) < tolerance) {
      return {std::move(sol2), 2 * n};
    }
    sol = std::move(sol2);
    n *= 2;
  }
  throw ConvergenceError("averaged channel: step halving exceeded its doubling budget");
}

BlockTrajectory package(RawTrajectory raw, double duration, int n_check) {
  BlockTrajectory out;
  out.steps_used = raw.steps_used;
  out.checkpoints.reserve(raw.checkpoints.size());
  for (size_t k = 0; k < raw.checkpoints.size(); ++k) {
    BlockState s;
    s.blocks = std::move(raw.checkpoints[k]);
    s.time = duration * static_cast<double>(k) / n_check;
    out.checkpoints.push_back(std::move(s));
  }
  return out;
}

BlockRhs balanced_rhs(const BalancedScheme& scheme, const HamiltonianSet& hamiltonians) {
  const double lambda = scheme.lambda;
  return [&scheme, &hamiltonians, lambda](double t, const Blocks& y, Blocks& dy) {
    Eigen::VectorXd a = balanced_rates(scheme, t);
    Matrix red = y[0];
    for (size_t j = 1; j < y.size(); ++j) red += y[j];
    const Complex mi(0.0, -1.0);
    for (size_t i = 0; i < y.size(); ++i) {
      const Matrix& hi = hamiltonians.term(static_cast<int>(i)).matrix();
      dy[i] = mi * (hi * y[i] - y[i] * hi) +
              a(static_cast<Eigen::Index>(i)) * red - lambda * y[i];
    }
  };
}

Blocks product_blocks(const Eigen::VectorXd& p0, const Matrix& rho0) {
  Blocks y;
  y.reserve(p0.size());
  for (Eigen::Index i = 0; i < p0.size(); ++i) y.push_back(p0(i) * rho0);
  return y;
}

long stiffness_steps(double rate, double duration) {
  return static_cast<long>(std::ceil(10.0 * rate * duration));
}

}  // namespace

BlockTrajectory averaged_channel_ode(const BalancedScheme& scheme,
                                     const HamiltonianSet& hamiltonians,
                                     const DensityMatrix& rho0, double tolerance,
                                     int n_check) {
  if (hamiltonians.count() != scheme.schedule.count()) {
    throw std::invalid_argument("averaged_channel_ode: node/term count mismatch");
  }
  if (n_check < 1) throw std::invalid_argument("averaged_channel_ode: n_check < 1");
  const double duration = scheme.schedule.horizon();
  Blocks y0 = product_blocks(scheme.schedule.value(0.0), rho0.matrix());
  RawTrajectory raw =
      integrate_adaptive(balanced_rhs(scheme, hamiltonians), y0, duration, n_check,
                         stiffness_steps(scheme.lambda, duration), tolerance);
  return package(std::move(raw), duration, n_check);
}

BlockTrajectory averaged_channel_ode(const RateMatrix& rates,
                                     const HamiltonianSet& hamiltonians,
                                     const Eigen::VectorXd& p0,
                                     const DensityMatrix& rho0, double duration,
                                     double tolerance, int n_check) {
  if (hamiltonians.count() != rates.nodes) {
    throw std::invalid_argument("averaged_channel_ode: node/term count mismatch");
  }
  if (p0.size() != rates.nodes) {
    throw std::invalid_argument("averaged_channel_ode: p0 size mismatch");
  }
  if (std::abs(p0.sum() - 1.0) > tol::weight_sum || p0.minCoeff() < -tol::weight_sum) {
    throw std::invalid_argument("averaged_channel_ode: p0 is not a probability vector");
  }
  if (n_check < 1) throw std::invalid_argument("averaged_channel_ode: n_check < 1");

  double stiff = 0.0;
  for (int g = 0; g <= 100; ++g) {
    Eigen::MatrixXd m = rates.entries(duration * g / 100.0);
    stiff = std::max(stiff, m.diagonal().cwiseAbs().maxCoeff());
  }
  BlockRhs rhs = [&rates, &hamiltonians](double t, const Blocks& y, Blocks& dy) {
    Eigen::MatrixXd a = rates.entries(t);
    const Complex mi(0.0, -1.0);
    for (size_t i = 0; i < y.size(); ++i) {
      const Matrix& hi = hamiltonians.term(static_cast<int>(i)).matrix();
      dy[i] = mi * (hi * y[i] - y[i] * hi);
      for (size_t j = 0; j < y.size(); ++j) {
        dy[i] += a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * y[j];
      }
    }
  };
  Blocks y0 = product_blocks(p0, rho0.matrix());
  RawTrajectory raw = integrate_adaptive(rhs, y0, duration, n_check,
                                         stiffness_steps(stiff, duration), tolerance);
  return package(std::move(raw), duration, n_check);
}

namespace {

constexpr int kMcSlots = 64;

struct SlotAccumulator {
  Matrix sum;
  Eigen::MatrixXd sum_sq;  // per-entry Σ|x|²
};

}  // namespace

ChannelEstimate mc_channel(const BalancedScheme& scheme,
                           const HamiltonianSet& hamiltonians,
                           const DensityMatrix& rho0, long realizations,
                           const StreamFactory& streams,
                           std::optional<double> epsilon1, int threads) {
  if (realizations < 1) throw std::invalid_argument("mc_channel: need M >= 1");
  if (epsilon1 && !(*epsilon1 > 0.0 && *epsilon1 < 1.0)) {
    throw std::invalid_argument("mc_channel: epsilon1 must lie in (0, 1)");
  }
  const Eigen::Index d = rho0.dim();
  const double duration = scheme.schedule.horizon();
  const Matrix mixed = Matrix::Identity(d, d) / static_cast<double>(d);

  std::vector<SlotAccumulator> slots(kMcSlots);
  for (auto& s : slots) {
    s.sum = Matrix::Zero(d, d);
    s.sum_sq = Eigen::MatrixXd::Zero(d, d);
  }

  // Slot s owns realizations s, s+64, s+128, ...; partial sums are formed in
  // ascending realization order inside each slot and combined in slot order,
  // so the result does not depend on how slots are spread across threads.
  auto run_slots = [&](int slot_begin, int slot_end) {
    for (int s = slot_begin; s < slot_end; ++s) {
      for (long m = s; m < realizations; m += kMcSlots) {
        Philox rng = streams.stream(static_cast<uint64_t>(m));
        Realization r = sample_realization(scheme, duration, rng);
        Matrix sigma = rho0.matrix();
        for (const auto& seg : r.segments) {
          Matrix u = hamiltonians.unitary(seg.node, seg.dwell);
          sigma = u * sigma * u.adjoint();
          if (epsilon1) {
            sigma = (1.0 - *epsilon1) * sigma + (*epsilon1) * sigma.trace() * mixed;
          }
        }
        slots[s].sum += sigma;
        slots[s].sum_sq += sigma.cwiseAbs2();
      }
    }
  };

  const int nthreads = std::max(1, std::min(threads, kMcSlots));
  if (nthreads == 1) {
    run_slots(0, kMcSlots);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      const int lo = kMcSlots * t / nthreads;
      const int hi = kMcSlots * (t + 1) / nthreads;
      pool.emplace_back(run_slots, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  Matrix total = Matrix::Zero(d, d);
  Eigen::MatrixXd total_sq = Eigen::MatrixXd::Zero(d, d);
  for (const auto& s : slots) {
    total += s.sum;
    total_sq += s.sum_sq;
  }
  const double m = static_cast<double>(realizations);
  Matrix mean = total / m;

  double se = 0.0;
  if (realizations > 1) {
    Eigen::MatrixXd variance =
        ((total_sq - m * mean.cwiseAbs2()) / (m - 1.0)).cwiseMax(0.0);
    se = schatten_norm(variance.cwiseSqrt().cast<Complex>(), Schatten::one) /
         std::sqrt(m);
  }
  return ChannelEstimate{DensityMatrix(std::move(mean)), se, realizations};
}

double bias_norm(const DensityMatrix& exact, const DensityMatrix& averaged, Schatten p) {
  if (exact.dim() != averaged.dim()) {
    throw std::invalid_argument("bias_norm: dimension mismatch");
  }
  return schatten_norm(exact.matrix() - averaged.matrix(), p);
}

double channel_distance_lb(const ChannelFn& a, const ChannelFn& b, Eigen::Index dim,
                           int n_samples, Philox& rng, int refine_steps) {
  if (n_samples < 1) throw std::invalid_argument("channel_distance_lb: need samples");
  auto value_at = [&](const Vector& psi) {
    Matrix rho = psi * psi.adjoint();
    return schatten_norm(a(rho) - b(rho), Schatten::one);
  };

  double best = 0.0;
  Vector best_psi;
  for (int k = 0; k < n_samples; ++k) {
    Vector psi = haar_state(rng, dim);
    const double v = value_at(psi);
    if (v >= best) {
      best = v;
      best_psi = std::move(psi);
    }
  }
  // Local random search around the best sample; step size adapts to the
  // accept/reject outcome.
  double step = 0.3;
  for (int r = 0; r < refine_steps; ++r) {
    Vector cand = best_psi + step * haar_state(rng, dim);
    cand /= cand.norm();
    const double v = value_at(cand);
    if (v > best) {
      best = v;
      best_psi = std::move(cand);
      step = std::min(1.0, step * 1.5);
    } else {
      step *= 0.7;
    }
  }
  return best;
}

Matrix averaged_superoperator(const BalancedScheme& scheme,
                              const HamiltonianSet& hamiltonians,
                              double tolerance) {
  const Eigen::Index d = hamiltonians.dim();
  const double duration = scheme.schedule.horizon();
  const Eigen::VectorXd w0 = scheme.schedule.value(0.0);
  BlockRhs rhs = balanced_rhs(scheme, hamiltonians);
  const long n0 = stiffness_steps(scheme.lambda, duration);

  Matrix s(d * d, d * d);
  for (Eigen::Index col = 0; col < d * d; ++col) {
    Matrix basis = Matrix::Zero(d, d);
    basis(col % d, col / d) = 1.0;
    RawTrajectory raw =
        integrate_adaptive(rhs, product_blocks(w0, basis), duration, 4, n0, tolerance);
    Matrix out = raw.checkpoints.back()[0];
    for (size_t i = 1; i < raw.checkpoints.back().size(); ++i) {
      out += raw.checkpoints.back()[i];
    }
    s.col(col) = Eigen::Map<const Vector>(out.data(), d * d);
  }
  return s;
}

Matrix unitary_superoperator(const Matrix& u) {
  return Eigen::kroneckerProduct(u.conjugate(), u);
}

ChannelFn channel_from_superoperator(Matrix s) {
  const Eigen::Index d2 = s.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(d2))));
  if (d * d != d2 || s.cols() != d2) {
    throw std::invalid_argument("channel_from_superoperator: not a d^2 x d^2 matrix");
  }
  return [mat = std::move(s), d](const Matrix& rho) {
    Vector v = Eigen::Map<const Vector>(rho.data(), d * d);
    Vector w = mat * v;
    return Matrix(Eigen::Map<const Matrix>(w.data(), d, d));
  };
}

}  // namespace chainsim
