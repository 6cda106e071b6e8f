#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace takagi {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// 50 significant digits; used where a real (non-rational) quantity must be
/// carried through an alternating sum.
using Float50 = boost::multiprecision::cpp_bin_float_50;

/// Parses "a/b", an integer, or a decimal with optional exponent
/// ("0.25", "1e-3") into an exact rational. Throws std::invalid_argument.
Rational parseRational(const std::string& text);

double toDouble(const Rational& r);

/// A real number that may also be known exactly.
struct ExactReal {
  double value = 0.0;
  std::optional<Rational> exact;

  ExactReal() = default;
  ExactReal(double v) : value(v) {}
  ExactReal(const Rational& r) : value(toDouble(r)), exact(r) {}

  /// Parses like parseRational; the result always carries the exact value.
  static ExactReal parse(const std::string& text) { return ExactReal(parseRational(text)); }
};

}  // namespace takagi
