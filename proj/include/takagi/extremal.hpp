#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "takagi/tl_function.hpp"

namespace takagi {

struct ExtremeResult {
  double value = 0.0;
  std::vector<double> locations;
  std::optional<int> level;
};

/// max x^H = 1 / (3 (1 - 2^{-H})), attained exactly at 1/3 and 2/3.
ExtremeResult maxValue(const Hurst& h);

/// Jacobsthal number J_n = (2^n - (-1)^n) / 3. n <= 62.
std::int64_t jacobsthal(int n);

/// Maximum M_n of the truncation x^H_n and its two maximizers
/// t_n^- = J_n 2^{-n}, t_n^+ = 1 - t_n^-.
ExtremeResult truncatedMax(const Hurst& h, int n);

/// Largest value of the level-n grid of x and the grid points attaining it.
ExtremeResult gridMax(const SignedTLFunction& x, int n);

struct Oscillation {
  double value = 0.0;
  double s = 1.0 / 3.0;
  double t = 5.0 / 6.0;
};

/// Largest |x(t) - x(s)| over the whole class: (2^H + 3) / (6 (2^H - 1)),
/// attained by the tilde function at s = 1/3, t = 5/6.
Oscillation uniformOscillation(const Hurst& h);

/// nu(h) = floor(-log2 h), read off the binary exponent of h so that
/// h = 2^{-n} gives exactly n. Requires h > 0.
int nu(double h);

/// Modulus of continuity
///   omega_H(h) = h 2^{(nu-1)(1-H)} / (2^{1-H} - 1) + 2^{(1-nu)H} / (3 (1 - 2^{-H})).
/// Throws std::domain_error unless 0 < h < 1.
double omega(const Hurst& h, double step);

/// Constants with lower * h^H <= omega_H(h) <= upper * h^H for all h in (0,1).
struct OmegaBracket {
  double lower = 0.0;
  double upper = 0.0;
};
OmegaBracket omegaBracket(const Hurst& h);

struct ModulusRow {
  double h = 0.0;
  double omega = 0.0;
  double max_increment = 0.0;
  double max_ratio = 0.0;
};

struct ModulusReport {
  int level = 0;
  double bound_factor = 1.0;
  double max_ratio = 0.0;
  double t_at_max = 0.0;
  double h_at_max = 0.0;
  /// One row per lag h = d 2^{-n}, d = 1 .. 2^n - 1.
  std::vector<ModulusRow> rows;
};

/// Largest |x(t+h) - x(t)| / (bound_factor * omega_H(h)) over all dyadic
/// pairs of the level-n grid. n <= 22.
ModulusReport modulusCheck(const SignedTLFunction& x, int n, double bound_factor);

struct SharpnessPoint {
  int n = 0;
  double h = 0.0;
  int nu = 0;
  /// x^H(h_n), evaluated to 1e-12 at the exact rational h_n.
  double lhs = 0.0;
  double omega = 0.0;
  /// omega_H(h_n) - h_n / (2^{1-H} - 1), the closed form of lhs.
  double identity_rhs = 0.0;
  double ratio = 0.0;
};

/// Evaluates x^H along h_n = (2/3) 2^{-n}, the sequence showing that omega_H
/// cannot be improved. n in [2, 60].
SharpnessPoint sharpnessSequence(const Hurst& h, int n);

}  // namespace takagi
