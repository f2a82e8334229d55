// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>

namespace gpcone {

/// Deterministic splitmix64 stream. Every sampling routine takes an explicit
/// seed and derives one stream per call (or per sample index), so results do
/// not depend on call order or thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Log-uniform over [a, b], a > 0.
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  /// Standard normal via Box-Muller (pairs generated eagerly, second value
  /// discarded; costs one extra uniform but keeps the stream stateless).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    // Guard against log(0).
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  Eigen::VectorXd normal_vector(Eigen::Index k) {
    Eigen::VectorXd v(k);
    for (Eigen::Index i = 0; i < k; ++i) v(i) = normal();
    return v;
  }

  /// Uniform direction on the unit sphere of R^k.
  Eigen::VectorXd unit_vector(Eigen::Index k) {
    Eigen::VectorXd v = normal_vector(k);
    double nrm = v.norm();
    while (nrm < 1e-300) {
      v = normal_vector(k);
      nrm = v.norm();
    }
    return v / nrm;
  }

 private:
  std::uint64_t state_;
};

/// Stateless seed derivation for substreams (sample index, phase id, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  return r.next_u64();
}

}  // namespace gpcone
