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

#include "ia3/rational.hpp"

#include "ia3/error.hpp"

#include <cstdio>
#include <cstdlib>
#include <limits>

namespace ia3 {

std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

std::string to_decimal(const Rational& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", to_double(x));
  return buf;
}

namespace {

std::int64_t parse_int(const std::string& s) {
  if (s.empty()) fail(ErrorKind::invalid_input, "empty number");
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    fail(ErrorKind::invalid_input, "not a number: '" + s + "'");
  }
  if (pos != s.size()) fail(ErrorKind::invalid_input, "not a number: '" + s + "'");
  return v;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const auto den = parse_int(s.substr(slash + 1));
    if (den == 0) fail(ErrorKind::invalid_input, "zero denominator in '" + s + "'");
    return Rational(parse_int(s.substr(0, slash)), den);
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    if (frac.size() > 15) fail(ErrorKind::invalid_input, "too many decimals in '" + s + "'");
    std::int64_t scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    const std::string whole = s.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::int64_t ip = whole.empty() || whole == "-" ? 0 : parse_int(whole);
    const std::int64_t fp = frac.empty() ? 0 : parse_int(frac);
    if (fp < 0) fail(ErrorKind::invalid_input, "malformed decimal '" + s + "'");
    const Rational mag = Rational(negative ? -ip : ip) + Rational(fp, scale);
    return negative ? -mag : mag;
  }
  return Rational(parse_int(s));
}

}  // namespace ia3
