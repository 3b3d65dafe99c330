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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>

#include <Eigen/Dense>

namespace chainsim {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Streams are
// addressed by (seed, stream id), so Monte-Carlo realization k can always use
// stream k of the master seed: results do not depend on thread count, and two
// runs with the same seed are bit-identical.
class Philox {
 public:
  using result_type = std::uint64_t;

  Philox(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() noexcept {
    if (cursor_ >= 2) {
      fill();
      cursor_ = 0;
    }
    const int lane = 2 * cursor_++;
    return static_cast<std::uint64_t>(out_[lane]) |
           (static_cast<std::uint64_t>(out_[lane + 1]) << 32);
  }

  std::uint64_t stream() const noexcept { return stream_; }

  /// One keyed 10-round block. Exposed so the published test vectors can be
  /// checked against the exact counter/key words.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> c,
                                            std::array<std::uint32_t, 2> k) noexcept {
    for (int round = 0; round < 10; ++round) {
      const auto [hi0, lo0] = mulhilo(0xD2511F53u, c[0]);
      const auto [hi1, lo1] = mulhilo(0xCD9E8D57u, c[2]);
      c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    return c;
  }

 private:
  static std::pair<std::uint32_t, std::uint32_t> mulhilo(std::uint32_t a,
                                                         std::uint32_t b) noexcept {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    return {static_cast<std::uint32_t>(p >> 32), static_cast<std::uint32_t>(p)};
  }

  void fill() noexcept {
    out_ = block({static_cast<std::uint32_t>(counter_),
                  static_cast<std::uint32_t>(counter_ >> 32),
                  static_cast<std::uint32_t>(stream_),
                  static_cast<std::uint32_t>(stream_ >> 32)},
                 key_);
    ++counter_;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t counter_ = 0;
  std::uint64_t stream_;
  std::array<std::uint32_t, 4> out_{};
  int cursor_ = 2;
};

/// Derives per-purpose, per-index streams from one master seed. Tags keep
/// independent uses of randomness (MC realizations, Haar samples, baselines)
/// from ever sharing a stream.
struct StreamFactory {
  std::uint64_t seed = 0;
  std::uint64_t tag = 0;

  Philox stream(std::uint64_t index) const noexcept {
    return Philox(seed, (tag << 48) | index);
  }
  StreamFactory with_tag(std::uint64_t t) const noexcept { return {seed, t}; }
};

namespace stream_tag {
inline constexpr std::uint64_t sample = 1;      // CLI `sample` / `compile`
inline constexpr std::uint64_t mc = 2;          // Monte-Carlo channel realizations
inline constexpr std::uint64_t stats = 3;       // realization statistics loops
inline constexpr std::uint64_t distance = 4;    // pure-state distance search
inline constexpr std::uint64_t baseline = 8;    // + baseline index
}  // namespace stream_tag

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Philox& g) noexcept {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Exponential variate with the given rate, via inverse CDF.
inline double exponential_variate(Philox& g, double rate) noexcept {
  return -std::log1p(-uniform_unit(g)) / rate;
}

/// Pair of independent standard normals (Box-Muller).
inline std::pair<double, double> normal_pair(Philox& g) noexcept {
  const double u1 = 1.0 - uniform_unit(g);  // (0, 1]
  const double u2 = uniform_unit(g);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

/// Draws an index with probability weights[i] / total. Weights must be
/// nonnegative up to rounding; tiny negatives are treated as zero.
inline int sample_index(Philox& g, const Eigen::VectorXd& weights, double total) {
  const double u = uniform_unit(g) * total;
  double acc = 0.0;
  const auto n = weights.size();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    acc += std::max(weights[i], 0.0);
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(n - 1);
}

/// Same draw with the total taken from the weights themselves.
inline int sample_index(Philox& g, const Eigen::VectorXd& weights) {
  return sample_index(g, weights, weights.cwiseMax(0.0).sum());
}

/// Haar-random pure state: normalized vector of iid complex Gaussians.
inline Eigen::VectorXcd haar_state(Philox& g, Eigen::Index dim) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto [re, im] = normal_pair(g);
    v[i] = std::complex<double>(re, im);
  }
  v.normalize();
  return v;
}

}  // namespace chainsim
