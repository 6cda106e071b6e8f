#include "takagi/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace takagi {

namespace {

bool allDigits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parseSignedInt(const std::string& s) {
  std::string body = s;
  bool negative = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  if (!allDigits(body)) throw std::invalid_argument("not an integer: '" + s + "'");
  BigInt v(body);
  return negative ? BigInt(-v) : v;
}

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parseRational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const BigInt num = parseSignedInt(text.substr(0, slash));
    const BigInt den = parseSignedInt(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  }

  std::string mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    const std::string exp_text = text.substr(e + 1);
    try {
      std::size_t used = 0;
      exponent = std::stol(exp_text, &used);
      if (used != exp_text.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in '" + text + "'");
    }
    if (exponent > 400 || exponent < -400) throw std::invalid_argument("exponent out of range");
  }

  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
    negative = mantissa[0] == '-';
    mantissa = mantissa.substr(1);
  }
  std::string int_part = mantissa;
  std::string frac_part;
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("not a number: '" + text + "'");
  if ((!int_part.empty() && !allDigits(int_part)) || (!frac_part.empty() && !allDigits(frac_part)))
    throw std::invalid_argument("not a number: '" + text + "'");

  BigInt digits(int_part.empty() ? std::string("0") : int_part);
  digits = digits * pow10(static_cast<unsigned>(frac_part.size())) +
           (frac_part.empty() ? BigInt(0) : BigInt(frac_part));
  const long scale = exponent - static_cast<long>(frac_part.size());
  Rational r = scale >= 0 ? Rational(digits * pow10(static_cast<unsigned>(scale)))
                          : Rational(digits, pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-r) : r;
}

double toDouble(const Rational& r) { return r.convert_to<double>(); }

}  // namespace takagi
