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

#ifndef STOQNP_DIT_STRING_H
#define STOQNP_DIT_STRING_H

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stoqnp {

using Symbol = std::uint8_t;

/// A string over the alphabet {0, ..., q-1}. Used both for computational
/// basis labels of the full register and for the local strings a term sees.
///
/// Position 0 is the most significant digit, so lexicographic order on
/// strings of equal length matches the order of their base-q indices.
class DitString {
 public:
  DitString() = default;
  explicit DitString(std::vector<Symbol> dits) : dits_(std::move(dits)) {}
  DitString(std::size_t length, Symbol fill) : dits_(length, fill) {}

  /// Digits ("0110") when q <= 10, comma separated integers otherwise.
  static DitString parse(std::string_view text, unsigned q);
  static DitString from_index(std::uint64_t index, std::size_t length, unsigned q);

  std::size_t size() const { return dits_.size(); }
  bool empty() const { return dits_.empty(); }
  Symbol operator[](std::size_t i) const { return dits_[i]; }
  Symbol &operator[](std::size_t i) { return dits_[i]; }
  std::span<const Symbol> dits() const { return dits_; }

  std::uint64_t to_index(unsigned q) const;
  std::string to_string(unsigned q) const;

  friend auto operator<=>(const DitString &, const DitString &) = default;
  friend bool operator==(const DitString &, const DitString &) = default;

 private:
  std::vector<Symbol> dits_;
};

struct DitStringHash {
  std::size_t operator()(const DitString &s) const noexcept;
};

/// The symbols of `x` at `positions`, in the order the positions are listed.
DitString restrict_to(const DitString &x, std::span<const std::size_t> positions);

/// Copy of `x` with `positions[i]` overwritten by `values[i]`.
DitString splice(const DitString &x, std::span<const std::size_t> positions, const DitString &values);

/// Base-q index of a local string (position 0 most significant).
std::uint64_t local_index(const DitString &x, std::span<const std::size_t> positions, unsigned q);

/// q^e, throwing if it overflows 64 bits.
std::uint64_t checked_pow(std::uint64_t q, std::size_t e);

}  // namespace stoqnp

#endif
