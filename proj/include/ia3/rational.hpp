// Copyright 2026 The ia3 Authors
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

#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace ia3 {

/// Exact DoF values (e.g. 20/3, 90/11). Always kept in lowest terms with a
/// positive denominator.
using Rational = boost::rational<std::int64_t>;

inline Rational positive_part(const Rational& x) { return x < 0 ? Rational(0) : x; }

inline double to_double(const Rational& x) {
  return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& x);

/// Fixed six-decimal rendering used by tables.
std::string to_decimal(const Rational& x);

/// Parses "p", "p/q" or a finite decimal such as "1.25".
Rational parse_rational(const std::string& s);

}  // namespace ia3
