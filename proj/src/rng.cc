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

#include "stoqnp/rng.h"

#include <stdexcept>

namespace stoqnp {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::next() {
  counter_++;
  return splitmix64_mix(seed_ + counter_ * kGamma);
}

std::uint64_t CounterRng::uniform(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform: bound must be positive");
  }
  // Reject the top partial block so every residue is equally likely.
  std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  while (true) {
    std::uint64_t v = next();
    if (v <= limit) {
      return v % bound;
    }
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t t) {
  return splitmix64_mix(splitmix64_mix(seed) ^ (t * kGamma + 0x632BE59BD9B4E019ULL));
}

}  // namespace stoqnp
