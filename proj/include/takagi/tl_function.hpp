#pragma once

#include <optional>
#include <string>

#include "takagi/coeffs.hpp"
#include "takagi/rational.hpp"

namespace takagi {

/// Hurst parameter H in (0,1), optionally known as an exact rational so that
/// comparisons like p == 1/H can be decided exactly.
class Hurst {
 public:
  explicit Hurst(double H);
  explicit Hurst(const Rational& H);
  /// Accepts "a/b" or a decimal; throws std::invalid_argument when the value
  /// is outside (0,1).
  static Hurst parse(const std::string& text);

  double value() const { return H_; }
  /// p* = 1/H.
  double pStar() const { return 1.0 / H_; }
  /// lambda = 2^{H-1}, in (1/2, 1).
  double lambda() const { return lambda_; }
  Float50 lambda50() const;
  Float50 value50() const;

  const std::optional<Rational>& exact() const { return exact_; }

  /// 1/H when it is an integer (exactly, or to 1e-12 relative for a
  /// floating H).
  std::optional<int> integerPStar() const;
  /// 1/H when it is an even integer.
  std::optional<int> evenPStar() const;

  std::string toString() const;

 private:
  double H_;
  double lambda_;
  std::optional<Rational> exact_;
};

/// A member of the signed Takagi-Landsberg class:
///   x = sum_m 2^{m(1/2-H)} sum_k theta_{m,k} e_{m,k}.
struct SignedTLFunction {
  Hurst hurst;
  CoefficientSource coeffs;

  SignedTLFunction(Hurst h, CoefficientSource c) : hurst(std::move(h)), coeffs(std::move(c)) {}
};

/// x^H (all coefficients +1).
inline SignedTLFunction takagiLandsberg(const Hurst& h) {
  return {h, CoefficientSource::allPlus()};
}

/// The extremal member with +1 on left halves and -1 on right halves.
inline SignedTLFunction tildeFunction(const Hurst& h) {
  return {h, CoefficientSource::tilde()};
}

/// Uniform bound on |x - x_n|: 2^{-nH} / (2 (1 - 2^{-H})).
double tailBound(const Hurst& h, int n);

/// Smallest n with tailBound(h, n) <= eps.
int truncationLevel(const Hurst& h, double eps);

/// Partial sum over generations m < n at t in [0,1]. Descends the single
/// dyadic branch through t, so the cost is O(n). A double t is treated as
/// the exact binary rational it represents.
double evalTruncated(const SignedTLFunction& x, int n, double t);
/// Same, for an exact rational t in [0,1].
double evalTruncated(const SignedTLFunction& x, int n, const Rational& t);

struct EvalResult {
  double value = 0.0;
  /// Number of generations actually summed.
  int level = 0;
};

/// x(t) to within eps. Truncates at truncationLevel(eps); stops early once
/// the binary expansion of t terminates, in which case the value is exact
/// up to rounding.
EvalResult eval(const SignedTLFunction& x, double t, double eps);
EvalResult eval(const SignedTLFunction& x, const Rational& t, double eps);

/// 1 - t; x^H is symmetric under this map.
constexpr double symmetryPartner(double t) { return 1.0 - t; }

}  // namespace takagi
