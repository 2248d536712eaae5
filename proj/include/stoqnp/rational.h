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

#ifndef STOQNP_RATIONAL_H
#define STOQNP_RATIONAL_H

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace stoqnp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a binary double.
Rational rational_from_double(double x);

/// Parses "3", "-1/2", "0.25", "1e-3" exactly.
Rational parse_rational(std::string_view text);

double to_double(const Rational &r);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational &r);

}  // namespace stoqnp

#endif
