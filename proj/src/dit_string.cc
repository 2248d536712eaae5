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

#include "stoqnp/dit_string.h"

#include <charconv>
#include <stdexcept>

#include "stoqnp/errors.h"

namespace stoqnp {

DitString DitString::parse(std::string_view text, unsigned q) {
  std::vector<Symbol> out;
  if (q <= 10) {
    for (char c : text) {
      if (c < '0' || c > '9' || static_cast<unsigned>(c - '0') >= q) {
        throw ParseError("symbol '" + std::string(1, c) + "' outside alphabet of size " + std::to_string(q));
      }
      out.push_back(static_cast<Symbol>(c - '0'));
    }
    return DitString(std::move(out));
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) {
      comma = text.size();
    }
    std::string_view tok = text.substr(pos, comma - pos);
    unsigned v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v >= q) {
      throw ParseError("bad symbol '" + std::string(tok) + "' for alphabet of size " + std::to_string(q));
    }
    out.push_back(static_cast<Symbol>(v));
    pos = comma + 1;
  }
  return DitString(std::move(out));
}

DitString DitString::from_index(std::uint64_t index, std::size_t length, unsigned q) {
  std::vector<Symbol> out(length);
  for (std::size_t i = length; i-- > 0;) {
    out[i] = static_cast<Symbol>(index % q);
    index /= q;
  }
  return DitString(std::move(out));
}

std::uint64_t DitString::to_index(unsigned q) const {
  std::uint64_t r = 0;
  for (Symbol s : dits_) {
    r = r * q + s;
  }
  return r;
}

std::string DitString::to_string(unsigned q) const {
  std::string out;
  for (std::size_t i = 0; i < dits_.size(); i++) {
    if (q <= 10) {
      out.push_back(static_cast<char>('0' + dits_[i]));
    } else {
      if (i) {
        out.push_back(',');
      }
      out += std::to_string(dits_[i]);
    }
  }
  return out;
}

std::size_t DitStringHash::operator()(const DitString &s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Symbol c : s.dits()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

DitString restrict_to(const DitString &x, std::span<const std::size_t> positions) {
  std::vector<Symbol> out;
  out.reserve(positions.size());
  for (std::size_t p : positions) {
    out.push_back(x[p]);
  }
  return DitString(std::move(out));
}

DitString splice(const DitString &x, std::span<const std::size_t> positions, const DitString &values) {
  if (values.size() != positions.size()) {
    throw std::invalid_argument("splice: value length does not match positions");
  }
  DitString out = x;
  for (std::size_t i = 0; i < positions.size(); i++) {
    out[positions[i]] = values[i];
  }
  return out;
}

std::uint64_t local_index(const DitString &x, std::span<const std::size_t> positions, unsigned q) {
  std::uint64_t r = 0;
  for (std::size_t p : positions) {
    r = r * q + x[p];
  }
  return r;
}

std::uint64_t checked_pow(std::uint64_t q, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; i++) {
    if (q != 0 && r > UINT64_MAX / q) {
      throw std::overflow_error("q^n does not fit in 64 bits");
    }
    r *= q;
  }
  return r;
}

}  // namespace stoqnp
