#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "bcr/error.hpp"

namespace bcr {

/// Exact rational number in canonical reduced form (denominator > 0).
using Rational = mpq_class;
using Integer = mpz_class;

/// Always prints `num/den`, including `n/1` for integers.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts `num/den` or a bare integer.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorCode::ParseFailure, "bad rational '" + s + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace bcr
