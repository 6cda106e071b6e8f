// Brute-force reference computations for the test suites. Nothing here may
// call into the library's evaluation kernels.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using SignFn = std::function<int(int m, std::uint64_t k)>;

inline int plus(int, std::uint64_t) { return 1; }

inline int tilde(int m, std::uint64_t k) {
  if (m == 0) return 1;
  return k < (std::uint64_t{1} << (m - 1)) ? 1 : -1;
}

inline long double tent(long double t) { return std::max(std::min(t, 1.0L - t), 0.0L); }

/// Full double sum over every (m, k) with m < n, in long double.
inline long double directSum(double H, int n, long double t, const SignFn& theta = plus) {
  long double total = 0;
  for (int m = 0; m < n; ++m) {
    const long double weight = std::pow(2.0L, m * (0.5L - H));
    const long double scale = std::pow(2.0L, -0.5L * m);
    long double level = 0;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << m); ++k)
      level += theta(m, k) * scale * tent(std::ldexp(t, m) - static_cast<long double>(k));
    total += weight * level;
  }
  return total;
}

/// 2^n * mean over all sign vectors of |2^{-n} sum_m 2^{m(1-H)} s_m|^p.
inline long double enumerateVn(double H, double p, int n) {
  long double total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long double s = 0;
    for (int m = 0; m < n; ++m) s += ((mask >> m) & 1 ? -1.0L : 1.0L) * std::pow(2.0L, m * (1.0L - H));
    total += std::pow(std::fabs(std::ldexp(s, -n)), static_cast<long double>(p));
  }
  return total;
}

/// Signed version for odd integer p.
inline long double enumerateSignedVn(double H, int p, int n) {
  long double total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long double s = 0;
    for (int m = 0; m < n; ++m) s += ((mask >> m) & 1 ? -1.0L : 1.0L) * std::pow(2.0L, m * (1.0L - H));
    long double d = std::ldexp(s, -n), term = 1;
    for (int i = 0; i < p; ++i) term *= d;
    total += term;
  }
  return total;
}

/// E[|sum_{m<n} lambda^m Y_m|^p] by full enumeration.
inline long double enumerateMoment(long double lambda, double p, int n) {
  long double total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    long double s = 0;
    for (int m = 0; m < n; ++m) s += ((mask >> m) & 1 ? -1.0L : 1.0L) * std::pow(lambda, m);
    total += std::pow(std::fabs(s), static_cast<long double>(p));
  }
  return std::ldexp(total, -n);
}

/// Number of integer partitions of n by the standard coin-change DP.
inline std::uint64_t partitionCount(int n) {
  std::vector<std::uint64_t> ways(n + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= n; ++s) ways[s] += ways[s - part];
  return ways[n];
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0xC0FFEE);
  return gen;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline std::int64_t uniformInt(std::int64_t a, std::int64_t b) {
  return std::uniform_int_distribution<std::int64_t>(a, b)(rng());
}

}  // namespace oracle
