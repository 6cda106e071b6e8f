#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "takagi/rational.hpp"
#include "takagi/tl_function.hpp"

namespace takagi {

/// Law of Z = sum_m lambda^m Y_m with i.i.d. fair signs Y_m. For a Hurst
/// parameter H the contraction is lambda = 2^{H-1}.
class BernoulliConvolution {
 public:
  static BernoulliConvolution fromHurst(const Hurst& h);
  static BernoulliConvolution fromLambda(const Rational& lambda);
  static BernoulliConvolution fromLambda(double lambda);

  double lambda() const { return lambda_; }
  const Float50& lambda50() const { return lambda50_; }
  /// Set only when lambda itself is rational.
  const std::optional<Rational>& exactLambda() const { return exact_; }

 private:
  BernoulliConvolution(double l, Float50 l50, std::optional<Rational> exact)
      : lambda_(l), lambda50_(std::move(l50)), exact_(std::move(exact)) {}

  double lambda_;
  Float50 lambda50_;
  std::optional<Rational> exact_;
};

/// E[Z^p] for even p >= 2 from the self-similarity Z = Y_0 + lambda Z':
///   E[Z^p] (1 - lambda^p) = sum_{j even, j < p} C(p,j) lambda^j E[Z^j].
/// Every term is non-negative, so the recursion is stable in any Scalar;
/// with Scalar = Rational it is exact.
template <typename Scalar>
Scalar evenMoment(const Scalar& lambda, int p) {
  if (p < 2 || p % 2 != 0) throw std::invalid_argument("even moment needs an even p >= 2");
  std::vector<Scalar> moments{Scalar(1)};  // E[Z^0], E[Z^2], ...
  std::vector<Scalar> lambda_pow{Scalar(1)};
  for (int q = 1; q <= p; ++q) lambda_pow.push_back(lambda_pow.back() * lambda);
  for (int q = 2; q <= p; q += 2) {
    Scalar binom(1);  // C(q, j), updated for even j
    Scalar acc(0);
    for (int j = 0; j < q; j += 2) {
      acc += binom * lambda_pow[j] * moments[j / 2];
      binom = binom * Scalar(q - j) * Scalar(q - j - 1) / (Scalar(j + 1) * Scalar(j + 2));
    }
    moments.push_back(acc / (Scalar(1) - lambda_pow[q]));
  }
  return moments.back();
}

/// E[S_n^p] for S_n = sum_{m<n} lambda^m Y_m and even p, via
/// S_{n} = Y_0 + lambda S_{n-1}.
template <typename Scalar>
Scalar truncatedEvenMoment(const Scalar& lambda, int p, int n) {
  if (p < 2 || p % 2 != 0) throw std::invalid_argument("even moment needs an even p >= 2");
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  std::vector<Scalar> lambda_pow{Scalar(1)};
  for (int q = 1; q <= p; ++q) lambda_pow.push_back(lambda_pow.back() * lambda);
  std::vector<Scalar> moments(p / 2 + 1, Scalar(0));  // moments of S_0 = 0
  moments[0] = Scalar(1);
  for (int level = 0; level < n; ++level) {
    std::vector<Scalar> next(moments.size(), Scalar(0));
    next[0] = Scalar(1);
    for (int q = 2; q <= p; q += 2) {
      Scalar binom(1);
      Scalar acc(0);
      for (int j = 0; j <= q; j += 2) {
        acc += binom * lambda_pow[j] * moments[j / 2];
        if (j + 2 <= q)
          binom = binom * Scalar(q - j) * Scalar(q - j - 1) / (Scalar(j + 1) * Scalar(j + 2));
      }
      next[q / 2] = acc;
    }
    moments = std::move(next);
  }
  return moments[p / 2];
}

struct MomentValue {
  double value = 0.0;
  /// Present when the computation was carried out in exact arithmetic.
  std::optional<Rational> exact;
  std::string method;
};

/// E[Z^p] for even p >= 2; exact when lambda is rational, otherwise carried
/// in 50-digit arithmetic and rounded once.
MomentValue evenMoment(const BernoulliConvolution& bc, int p);

/// E[Z^p] for any integer p >= 0: 1 at p = 0, 0 for odd p by symmetry.
MomentValue signedMoment(const BernoulliConvolution& bc, int p);

/// B_0 .. B_count with B_1 = -1/2, from sum_{j<=m} C(m+1,j) B_j = 0.
std::vector<Rational> bernoulliNumbers(int count);

/// Every multiplicity vector (n_1..n_n) with sum_k k n_k = n, in decreasing
/// lexicographic order. n <= 40.
void forEachPartition(int n, const std::function<void(std::span<const int>)>& visit);
std::vector<std::vector<int>> partitions(int n);

/// The Bernoulli-number/partition closed form with the factor
/// (1 - lambda)^{2k} inside each cumulant, evaluated term by term. It equals
/// E[((1 - lambda) Z)^p], the even moment of the normalized convolution.
template <typename Scalar>
Scalar escribanoMoment(const Scalar& lambda, int p);

/// Closed form above for lambda = 2^{H-1}, in 50-digit arithmetic.
double escribanoMoment(const Hurst& h, int p);
/// escribanoMoment divided by (1 - lambda)^p, i.e. E[Z_H^p].
double escribanoMomentOfZ(const Hurst& h, int p);

struct MomentEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  int truncation = 0;
  /// Upper bound on |E|S_T|^p - E|Z|^p| from cutting the series at T.
  double truncation_bias_bound = 0.0;
};

/// Smallest T >= 64 with lambda^T / (1 - lambda) <= 1e-12.
int defaultTruncation(double lambda);

/// Monte Carlo E|S_T|^p from a counter-based generator: sample i, block b
/// uses mix64(key(seed) + i * blocks + b), so the estimate is reproducible
/// and independent of the thread count. truncation = 0 selects
/// defaultTruncation().
MomentEstimate sampleAbsMoment(const BernoulliConvolution& bc, double p, std::uint64_t samples,
                               std::uint64_t seed, int truncation = 0);

// ---------------------------------------------------------------------------

template <typename Scalar>
Scalar escribanoMoment(const Scalar& lambda, int p) {
  if (p < 2 || p % 2 != 0) throw std::invalid_argument("closed form needs an even p >= 2");
  const int n = p / 2;
  if (n > 20) throw std::length_error("closed form limited to p/2 <= 20");
  const std::vector<Rational> bern = bernoulliNumbers(2 * n);

  auto factorial = [](int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };

  // Per-k factor: (1/(2k)!) ((-1)^k/(2k)) 2^{2k}(2^{2k}-1) B_{2k}
  //               * (1-lambda)^{2k} / (1 - lambda^{2k}).
  std::vector<Scalar> factor(n + 1, Scalar(0));
  const Scalar one_minus = Scalar(1) - lambda;
  for (int k = 1; k <= n; ++k) {
    const BigInt four_k = BigInt(1) << (2 * k);
    Rational c = Rational(four_k * (four_k - 1)) * bern[2 * k] /
                 Rational(factorial(2 * k) * BigInt(2 * k));
    if (k % 2 != 0) c = -c;
    Scalar lam2k(1), om2k(1);
    for (int i = 0; i < 2 * k; ++i) {
      lam2k = lam2k * lambda;
      om2k = om2k * one_minus;
    }
    Scalar cs;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      cs = c;
    } else {
      cs = Scalar(numerator(c)) / Scalar(denominator(c));
    }
    factor[k] = cs * om2k / (Scalar(1) - lam2k);
  }

  const BigInt two_n_fact = factorial(2 * n);
  Scalar total(0);
  forEachPartition(n, [&](std::span<const int> mult) {
    BigInt denom = 1;
    for (int mk : mult) denom *= factorial(mk);
    const Rational coeff(two_n_fact, denom);
    Scalar term;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      term = coeff;
    } else {
      term = Scalar(numerator(coeff)) / Scalar(denominator(coeff));
    }
    for (int k = 1; k <= n; ++k)
      for (int r = 0; r < mult[k - 1]; ++r) term = term * factor[k];
    total += term;
  });
  return n % 2 == 0 ? total : Scalar(-total);
}

}  // namespace takagi
