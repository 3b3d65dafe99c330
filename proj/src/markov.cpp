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

#include "chainsim/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "chainsim/config.hpp"
#include "chainsim/errors.hpp"

namespace chainsim {

BalancedScheme make_balanced(WeightSchedule schedule, double lambda, int grid_points) {
  if (!(lambda > 0.0)) throw RateError("lambda must be positive");
  if (grid_points <= 0) grid_points = tol::rate_grid_points;
  schedule.validate(grid_points);
  BalancedScheme scheme{std::move(schedule), lambda};
  for (int g = 0; g < grid_points; ++g) {
    const double t = scheme.schedule.horizon() * g / (grid_points - 1);
    balanced_rates(scheme, t);  // throws on a negative rate
  }
  return scheme;
}

Eigen::VectorXd balanced_rates(const BalancedScheme& scheme, double t) {
  Eigen::VectorXd a =
      scheme.schedule.derivative(t) + scheme.lambda * scheme.schedule.value(t);
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    if (a(j) < tol::rate_floor) {
      throw RateError("λ too small for this schedule: rate " +
                      std::to_string(j) + " = " + std::to_string(a(j)) +
                      " at t = " + std::to_string(t));
    }
  }
  return a;
}

RateMatrix balanced_rate_matrix(const BalancedScheme& scheme) {
  const int q = scheme.schedule.count();
  const double lambda = scheme.lambda;
  return RateMatrix{q, [scheme, q, lambda](double t) {
                      Eigen::VectorXd a = balanced_rates(scheme, t);
                      Eigen::MatrixXd m =
                          a.transpose().replicate(q, 1);  // column j carries a_j
                      m.diagonal().array() = a.array() - lambda;
                      return m;
                    }};
}

RateValidationReport validate_rate_matrix(const RateMatrix& a,
                                          const std::vector<double>& grid) {
  if (a.nodes < 1 || !a.entries) throw std::invalid_argument("validate_rate_matrix: empty matrix");
  RateValidationReport report;
  report.null_gap = std::numeric_limits<double>::infinity();
  for (double t : grid) {
    Eigen::MatrixXd m = a.entries(t);
    if (m.rows() != a.nodes || m.cols() != a.nodes) {
      throw std::invalid_argument("validate_rate_matrix: wrong matrix shape");
    }
    for (int i = 0; i < a.nodes; ++i) {
      for (int j = 0; j < a.nodes; ++j) {
        if (i != j && m(i, j) < tol::rate_floor) {
          report.ok = false;
          report.violation = "negative-offdiagonal";
          report.row = i;
          report.col = j;
          report.time = t;
          report.value = m(i, j);
          return report;
        }
      }
      const double rs = m.row(i).sum();
      if (std::abs(rs) > tol::row_sum) {
        report.ok = false;
        report.violation = "row-sum";
        report.row = i;
        report.col = -1;
        report.time = t;
        report.value = rs;
        return report;
      }
    }
    // Spectrum of Aᵀ: one eigenvalue is 0 by the row-sum property; the gap to
    // the next-smallest modulus measures non-degeneracy of the stationary
    // direction.
    Eigen::EigenSolver<Eigen::MatrixXd> es(m.transpose());
    Eigen::VectorXd mods = es.eigenvalues().cwiseAbs();
    std::sort(mods.data(), mods.data() + mods.size());
    const double gap = mods.size() > 1 ? mods(1) : 0.0;
    report.null_gap = std::min(report.null_gap, gap);
  }
  report.null_nondegenerate = a.nodes > 1 && report.null_gap > tol::null_gap;
  return report;
}

namespace {

struct SimpsonWork {
  const std::function<Eigen::VectorXd(double)>* f;
  int depth_limit;
};

Eigen::VectorXd simpson_slice(const SimpsonWork& w, double a, double b,
                              const Eigen::VectorXd& fa, const Eigen::VectorXd& fm,
                              const Eigen::VectorXd& fb, const Eigen::VectorXd& whole,
                              double tolerance, int depth) {
  const double m = (a + b) / 2;
  const double lm = (a + m) / 2;
  const double rm = (m + b) / 2;
  Eigen::VectorXd flm = (*w.f)(lm);
  Eigen::VectorXd frm = (*w.f)(rm);
  Eigen::VectorXd left = (m - a) / 6 * (fa + 4 * flm + fm);
  Eigen::VectorXd right = (b - m) / 6 * (fm + 4 * frm + fb);
  Eigen::VectorXd delta = left + right - whole;
  if (depth >= w.depth_limit || delta.cwiseAbs().maxCoeff() <= 15 * tolerance) {
    return left + right + delta / 15;
  }
  return simpson_slice(w, a, m, fa, flm, fm, left, tolerance / 2, depth + 1) +
         simpson_slice(w, m, b, fm, frm, fb, right, tolerance / 2, depth + 1);
}

}  // namespace

Eigen::VectorXd adaptive_simpson(const std::function<Eigen::VectorXd(double)>& f,
                                 double a, double b, double tolerance) {
  Eigen::VectorXd fa = f(a);
  if (b == a) return Eigen::VectorXd::Zero(fa.size());
  const double m = (a + b) / 2;
  Eigen::VectorXd fm = f(m);
  Eigen::VectorXd fb = f(b);
  Eigen::VectorXd whole = (b - a) / 6 * (fa + 4 * fm + fb);
  SimpsonWork w{&f, 48};
  return simpson_slice(w, a, b, fa, fm, fb, whole, tolerance, 0);
}

Eigen::VectorXd occupancy_solution(const BalancedScheme& scheme,
                                   const Eigen::VectorXd& p0, double t) {
  if (p0.size() != scheme.schedule.count()) {
    throw std::invalid_argument("occupancy_solution: p0 has wrong size");
  }
  if (std::abs(p0.sum() - 1.0) > tol::weight_sum || p0.minCoeff() < -tol::weight_sum) {
    throw std::invalid_argument("occupancy_solution: p0 is not a probability vector");
  }
  if (t < 0.0 || t > scheme.schedule.horizon() + 1e-12) {
    throw std::invalid_argument("occupancy_solution: t outside [0, horizon]");
  }
  const double lambda = scheme.lambda;
  auto integrand = [&](double tau) -> Eigen::VectorXd {
    return std::exp(-lambda * (t - tau)) * balanced_rates(scheme, tau);
  };
  Eigen::VectorXd integral = adaptive_simpson(integrand, 0.0, t, tol::quadrature);
  return std::exp(-lambda * t) * p0 + integral;
}

int Realization::node_at(double t) const {
  if (segments.empty()) throw std::logic_error("node_at: empty realization");
  double edge = 0.0;
  for (const auto& s : segments) {
    edge += s.dwell;
    if (t < edge) return s.node;
  }
  return segments.back().node;
}

Realization sample_realization(const BalancedScheme& scheme, double duration,
                               Philox& rng, RealizationStats* stats) {
  if (!(duration > 0.0)) throw std::invalid_argument("sample_realization: duration <= 0");
  RealizationStats local;
  Realization run;
  run.total = duration;

  int node = sample_index(rng, scheme.schedule.value(0.0));
  double t = 0.0;
  double seg_start = 0.0;
  while (true) {
    t += exponential_variate(rng, scheme.lambda);
    if (t >= duration) break;
    local.candidate_events += 1;
    const int next = sample_index(rng, balanced_rates(scheme, t));
    if (next != node) {
      local.true_jumps += 1;
      if (t > seg_start) run.segments.push_back({node, t - seg_start});
      seg_start = t;
      node = next;
    }
  }
  if (duration > seg_start) run.segments.push_back({node, duration - seg_start});
  if (stats) *stats = local;
  return run;
}

}  // namespace chainsim
