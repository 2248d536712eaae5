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

#include "stoqnp/rational.h"

#include <cmath>
#include <stdexcept>

#include "stoqnp/errors.h"

namespace stoqnp {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("non-finite value has no rational form");
  }
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 bits of mantissa scaled to an integer.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r = Rational(BigInt(scaled));
  if (exp > 0) {
    r *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    r /= Rational(BigInt(1) << -exp);
  }
  return r;
}

namespace {

BigInt parse_integer(std::string s) {
  bool neg = !s.empty() && s[0] == '-';
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    s = s.substr(1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("not an integer: '" + s + "'");
  }
  auto nz = s.find_first_not_of('0');
  BigInt v(nz == std::string::npos ? std::string("0") : s.substr(nz));
  return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) {
    throw ParseError("empty number");
  }
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num = parse_integer(s.substr(0, slash));
      BigInt den = parse_integer(s.substr(slash + 1));
      if (den == 0) {
        throw ParseError("zero denominator in '" + s + "'");
      }
      return Rational(num, den);
    }
    std::string mantissa = s;
    long long exp10 = 0;
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
      mantissa = s.substr(0, e);
      exp10 = std::stoll(s.substr(e + 1));
    }
    bool neg = false;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
      neg = mantissa[0] == '-';
      mantissa = mantissa.substr(1);
    }
    auto dot = mantissa.find('.');
    std::string digits = mantissa;
    if (dot != std::string::npos) {
      digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
      exp10 -= static_cast<long long>(mantissa.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("not a number: '" + s + "'");
    }
    // cpp_int reads a leading 0 as an octal prefix
    auto nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? "0" : digits.substr(nz);
    Rational r{BigInt(digits)};
    BigInt ten = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exp10)));
    if (exp10 > 0) {
      r *= Rational(ten);
    } else if (exp10 < 0) {
      r /= Rational(ten);
    }
    return neg ? Rational(-r) : r;
  } catch (const ParseError &) {
    throw;
  } catch (const std::exception &) {
    throw ParseError("not a number: '" + s + "'");
  }
}

double to_double(const Rational &r) {
  return r.convert_to<double>();
}

std::string to_string(const Rational &r) {
  const BigInt &den = boost::multiprecision::denominator(r);
  if (den == 1) {
    return boost::multiprecision::numerator(r).str();
  }
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

}  // namespace stoqnp
