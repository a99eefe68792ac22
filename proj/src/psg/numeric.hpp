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

#ifndef PSG_NUMERIC_HPP_
#define PSG_NUMERIC_HPP_

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace psg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  kInvalidArgument = 1,
  kContextMismatch,
  kParse,
  kBudgetExceeded,
  kUnsupported,
  kConfig,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

// Accepts "3", "-3/2", "0.25" and "1e-14".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Rational pow10(int exponent);
Rational ipow(const Rational& base, unsigned exponent);
BigInt floor(const Rational& q);
BigInt ceil(const Rational& q);
double to_double(const Rational& q);

// Upper rational approximation of log2(x) with denominator 2^32; exact when
// x is a power of two.
Rational log2_upper(uint64_t x);

// Exact test of base^num_exp <= rhs where num_exp is rational: decides
// whether 2^q <= n for q = a/b, used for bounds carrying log2 factors.
bool pow2_leq(const Rational& exponent, uint64_t n);

// A length measured in half edges. Distances between vertices are whole
// edges; Gromov products and distortion terms may be half edges.
class Length {
 public:
  constexpr Length() = default;
  static constexpr Length edges(int64_t k) { return Length(2 * k); }
  static constexpr Length halves(int64_t h) { return Length(h); }
  static constexpr Length infinity() {
    return Length(std::numeric_limits<int64_t>::max() / 4);
  }

  constexpr int64_t half_units() const { return h_; }
  constexpr bool whole() const { return h_ % 2 == 0; }
  constexpr int64_t whole_edges() const { return h_ / 2; }
  Rational in_edges() const { return Rational(h_, 2); }
  Rational scaled(const Rational& edge_length) const {
    return in_edges() * edge_length;
  }
  std::string str() const;

  constexpr Length operator+(Length o) const { return Length(h_ + o.h_); }
  constexpr Length operator-(Length o) const { return Length(h_ - o.h_); }
  constexpr Length operator*(int64_t k) const { return Length(h_ * k); }
  constexpr Length& operator+=(Length o) {
    h_ += o.h_;
    return *this;
  }
  constexpr auto operator<=>(const Length&) const = default;

 private:
  constexpr explicit Length(int64_t h) : h_(h) {}
  int64_t h_ = 0;
};

// Largest length <= q (absolute units), saturating at Length::infinity().
Length floor_length(const Rational& q, const Rational& edge_length);
// Smallest length >= q, saturating.
Length ceil_length(const Rational& q, const Rational& edge_length);

}  // namespace psg

#endif  // PSG_NUMERIC_HPP_
