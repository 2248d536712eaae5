// Copyright 2026 The stoqnp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STOQNP_RNG_H
#define STOQNP_RNG_H

#include <cstdint>

namespace stoqnp {

/// Counter-based generator: draw number i of stream `seed` is
/// splitmix64_mix(seed + (i + 1) * 0x9E3779B97F4A7C15). Any draw can be
/// recomputed from (seed, i) alone, which is what makes walks replayable.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t uniform(std::uint64_t bound);
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

/// Seed of trial `t` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t t);

}  // namespace stoqnp

#endif
