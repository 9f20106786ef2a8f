// lvdsk/numeric.hpp

// Copyright 2026  LVDSK Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LVDSK_NUMERIC_HPP
#define LVDSK_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

namespace lvdsk {

inline constexpr double kLogTwoPi = 1.8378770664093454836;

// Fixed-order pairwise tree reduction. Split points depend only on the
// element count, so the result is the same no matter how many threads
// produced the buffer.
double pairwise_sum(std::span<const double> v);

// max-shifted log(sum(exp(v))). Returns -inf for an empty span or when
// every entry is -inf.
double log_sum_exp(std::span<const double> v);

double digamma(double x);

// splitmix64-style stream derivation, used to hand every parallel unit of
// work (restart, corpus cell, utterance) its own deterministic seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

// Uniform/normal draws built directly on the raw 64-bit generator output.
// The std::* distributions are implementation-defined, which would break
// cross-toolchain reproducibility of seeded corpora.
template <class Rng>
inline double rand_u01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Rng>
inline double rand_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * rand_u01(rng);
}

template <class Rng>
inline std::size_t rand_index(Rng& rng, std::size_t n) {
  std::size_t i = static_cast<std::size_t>(rand_u01(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

// Box-Muller, exactly two raw draws per call.
template <class Rng>
inline double rand_normal(Rng& rng) {
  double u1 = rand_u01(rng);
  double u2 = rand_u01(rng);
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace lvdsk

#endif  // LVDSK_NUMERIC_HPP
