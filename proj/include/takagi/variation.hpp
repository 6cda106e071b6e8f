#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "takagi/dyadic.hpp"
#include "takagi/rational.hpp"
#include "takagi/tl_function.hpp"

namespace takagi {

enum class Regime { Vanishes, Diverges, Linear };

std::string toString(Regime r);

/// Sign of p - 1/H. Exact when both are known as rationals; otherwise p*H
/// is compared with 1 up to a few ulps.
Regime classifyRegime(const Hurst& h, const ExactReal& p);

/// Number of level-n cells whose left endpoint s satisfies s <= t.
std::uint64_t cellsUpTo(double t, int n);

/// V_n = sum_{s in T_n, s <= t} |x(s') - x(s)|^p, streamed over the level-n
/// increments with pairwise summation. Works up to max_level with memory
/// O(2^kDefaultChunkBits).
double vn(const SignedTLFunction& x, double p, double t, int n, int max_level = kDefaultMaxLevel);

/// Signed sum of (x(s') - x(s))^p for odd integer p.
double vnSigned(const SignedTLFunction& x, int p, double t, int n,
                int max_level = kDefaultMaxLevel);

struct EnumerationCheck {
  int n = 0;
  double p = 0.0;
  /// Columns of the sign matrix hit every vector of {-1,+1}^n exactly once.
  bool columns_complete = false;
  double vn = 0.0;
  /// sum over all sign vectors e of |2^{-n} sum_m e_m 2^{m(1-H)}|^p.
  double vn_enumerated = 0.0;
  double relative_difference = 0.0;
};

/// Checks V_n(x) at t = 1 against the enumeration over {-1,+1}^n. n <= 20.
EnumerationCheck enumerationCheck(const SignedTLFunction& x, double p, int n);

struct SlopeEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  bool exact = false;
  std::string method;
};

struct MonteCarloOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 20190619;
  int truncation = 0;  // 0: automatic
};

/// Slope 2^{1-1/H} E[|Z_H|^{1/H}] of the 1/H-th variation. Uses the exact
/// even-moment recursion when 1/H is an even integer (unless
/// force_monte_carlo), Monte Carlo otherwise.
SlopeEstimate predictedSlope(const Hurst& h, const MonteCarloOptions& mc = {},
                             bool force_monte_carlo = false);

/// 2^{1-1/H} E[|sum_{m<n} lambda^m Y_m|^p] for p = 1/H even; equals V_n at
/// t = 1. Throws std::invalid_argument when 1/H is not an even integer.
double truncatedSlope(const Hurst& h, int n);

struct VariationLevel {
  int n = 0;
  double vn = 0.0;
};

struct VariationReport {
  double H = 0.0;
  double p = 0.0;
  double t = 1.0;
  std::vector<VariationLevel> levels;
  /// t * slope when LINEAR, +inf when DIVERGES, 0 when VANISHES.
  double predicted_limit = 0.0;
  double predicted_limit_error = 0.0;
  Regime regime = Regime::Linear;
};

/// V_n for n = 1..n_max with the regime and its predicted limit.
VariationReport convergenceReport(const SignedTLFunction& x, const ExactReal& p, double t,
                                  int n_max, int max_level = kDefaultMaxLevel,
                                  const MonteCarloOptions& mc = {});

struct SlopeCurvePoint {
  double H = 0.0;
  SlopeEstimate slope;
};

/// The 50 H values k/50 (k = 1..49) together with 1/4, sorted.
std::vector<Rational> defaultSlopeGrid();

/// H -> 2^{1-1/H} E|Z_H|^{1/H} on the given grid.
std::vector<SlopeCurvePoint> slopeCurve(const std::vector<Rational>& grid,
                                        const MonteCarloOptions& mc = {});

}  // namespace takagi
