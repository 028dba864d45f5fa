#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "scengine/errors.hpp"

namespace scengine {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

/// Report form: always "p/q", including integers ("3/1").
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0) {
    throw PreconditionError("not a rational: '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw PreconditionError("zero denominator: '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

}  // namespace scengine
