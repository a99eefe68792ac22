// Copyright 2026 The psgrowth Authors
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

#include "psg/numeric.hpp"

#include <bit>
#include <cctype>
#include <cmath>

namespace psg {

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

namespace {

Rational parse_decimal(std::string_view s, std::string_view whole) {
  if (s.empty()) fail(ErrorCode::kParse, "empty number in '" + std::string(whole) + "'");
  bool negative = false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  int scale = 0;
  bool digits = false;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) --scale;
      digits = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!digits) fail(ErrorCode::kParse, "malformed number '" + std::string(whole) + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') {
      fail(ErrorCode::kParse, "malformed number '" + std::string(whole) + "'");
    }
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i == s.size()) fail(ErrorCode::kParse, "malformed exponent in '" + std::string(whole) + "'");
    int e = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])) || e > 10000) {
        fail(ErrorCode::kParse, "malformed exponent in '" + std::string(whole) + "'");
      }
      e = e * 10 + (s[i] - '0');
    }
    scale += eneg ? -e : e;
  }
  Rational q = Rational(mantissa) * pow10(scale);
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  size_t slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, text);
  Rational num = parse_decimal(text.substr(0, slash), text);
  Rational den = parse_decimal(text.substr(slash + 1), text);
  if (den == 0) fail(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    return boost::multiprecision::numerator(q).str();
  }
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

Rational pow10(int exponent) {
  BigInt p = 1;
  for (int i = 0; i < std::abs(exponent); ++i) p *= 10;
  return exponent >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

Rational ipow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

BigInt floor(const Rational& q) {
  BigInt n = boost::multiprecision::numerator(q);
  BigInt d = boost::multiprecision::denominator(q);
  BigInt t = n / d;
  if (n < 0 && t * d != n) t -= 1;
  return t;
}

BigInt ceil(const Rational& q) { return -floor(-q); }

double to_double(const Rational& q) {
  return q.convert_to<double>();
}

Rational log2_upper(uint64_t x) {
  if (x == 0) fail(ErrorCode::kInvalidArgument, "log2 of zero");
  if (std::has_single_bit(x)) return Rational(std::countr_zero(x));
  constexpr int64_t kDen = int64_t{1} << 32;
  long double v = std::log2(static_cast<long double>(x)) * static_cast<long double>(kDen);
  auto num = static_cast<int64_t>(std::ceil(v)) + 1;
  return Rational(num, kDen);
}

bool pow2_leq(const Rational& exponent, uint64_t n) {
  if (n == 0) return false;
  if (exponent <= 0) return true;
  BigInt a = boost::multiprecision::numerator(exponent);
  BigInt b = boost::multiprecision::denominator(exponent);
  if (b <= 64 && a <= 4096) {
    unsigned ua = a.convert_to<unsigned>();
    unsigned ub = b.convert_to<unsigned>();
    BigInt lhs = BigInt(1) << ua;
    BigInt rhs = 1;
    for (unsigned i = 0; i < ub; ++i) rhs *= n;
    return lhs <= rhs;
  }
  long double q = exponent.convert_to<long double>();
  return q <= std::log2(static_cast<long double>(n));
}

std::string Length::str() const {
  if (*this >= infinity()) return "inf";
  return to_string(in_edges());
}

namespace {

Length saturate(const BigInt& halves) {
  const BigInt cap = Length::infinity().half_units();
  if (halves >= cap) return Length::infinity();
  if (halves <= -cap) return Length::halves(-Length::infinity().half_units());
  return Length::halves(halves.convert_to<int64_t>());
}

}  // namespace

Length floor_length(const Rational& q, const Rational& edge_length) {
  return saturate(floor(2 * q / edge_length));
}

Length ceil_length(const Rational& q, const Rational& edge_length) {
  return saturate(ceil(2 * q / edge_length));
}

}  // namespace psg
