#include "takagi/bernoulli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "takagi/coeffs.hpp"
#include "takagi/parallel.hpp"

namespace takagi {

BernoulliConvolution BernoulliConvolution::fromHurst(const Hurst& h) {
  return {h.lambda(), h.lambda50(), std::nullopt};
}

BernoulliConvolution BernoulliConvolution::fromLambda(const Rational& lambda) {
  if (lambda <= 0 || lambda >= 1) throw std::invalid_argument("lambda must lie in (0,1)");
  return {toDouble(lambda), Float50(numerator(lambda)) / Float50(denominator(lambda)), lambda};
}

BernoulliConvolution BernoulliConvolution::fromLambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0,1)");
  return {lambda, Float50(lambda), std::nullopt};
}

MomentValue evenMoment(const BernoulliConvolution& bc, int p) {
  if (bc.exactLambda()) {
    const Rational r = evenMoment<Rational>(*bc.exactLambda(), p);
    return {toDouble(r), r, "recursion-exact"};
  }
  return {evenMoment<Float50>(bc.lambda50(), p).convert_to<double>(), std::nullopt,
          "recursion-float50"};
}

MomentValue signedMoment(const BernoulliConvolution& bc, int p) {
  if (p < 0) throw std::invalid_argument("moment order must be non-negative");
  if (p == 0) return {1.0, Rational(1), "trivial"};
  if (p % 2 != 0) return {0.0, Rational(0), "symmetry"};
  return evenMoment(bc, p);
}

std::vector<Rational> bernoulliNumbers(int count) {
  if (count < 0 || count > 64) throw std::length_error("Bernoulli numbers limited to count <= 64");
  std::vector<Rational> b(count + 1);
  b[0] = 1;
  for (int m = 1; m <= count; ++m) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rational acc = 0;
    BigInt binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      acc += Rational(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -acc / Rational(m + 1);
  }
  return b;
}

void forEachPartition(int n, const std::function<void(std::span<const int>)>& visit) {
  if (n < 1) throw std::invalid_argument("partitions need n >= 1");
  if (n > 40) throw std::length_error("partitions limited to n <= 40");
  std::vector<int> mult(n, 0);
  // Fill n_k for k = 1..n, largest multiplicity first.
  std::function<void(int, int)> rec = [&](int k, int rem) {
    if (k > n) {
      if (rem == 0) visit(mult);
      return;
    }
    for (int c = rem / k; c >= 0; --c) {
      const int left = rem - c * k;
      // Remaining parts are all > k; a non-zero remainder below k+1 is dead.
      if (left != 0 && left < k + 1) continue;
      mult[k - 1] = c;
      rec(k + 1, left);
    }
    mult[k - 1] = 0;
  };
  rec(1, n);
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  forEachPartition(n, [&](std::span<const int> v) { out.emplace_back(v.begin(), v.end()); });
  return out;
}

double escribanoMoment(const Hurst& h, int p) {
  return escribanoMoment<Float50>(h.lambda50(), p).convert_to<double>();
}

double escribanoMomentOfZ(const Hurst& h, int p) {
  const Float50 lambda = h.lambda50();
  return (escribanoMoment<Float50>(lambda, p) / boost::multiprecision::pow(Float50(1) - lambda, p))
      .convert_to<double>();
}

int defaultTruncation(double lambda) {
  int t = 64;
  while (std::pow(lambda, t) / (1.0 - lambda) > 1e-12) t += 8;
  return t;
}

namespace {

struct Welford {
  double n = 0, mean = 0, m2 = 0;
  void add(double x) {
    n += 1;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }
  void merge(const Welford& o) {
    if (o.n == 0) return;
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * o.n / total;
    m2 += o.m2 + delta * delta * n * o.n / total;
    n = total;
  }
};

double absPow(double z, double p) {
  const double a = std::abs(z);
  if (p == 0.0) return 1.0;
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

}  // namespace

MomentEstimate sampleAbsMoment(const BernoulliConvolution& bc, double p, std::uint64_t samples,
                               std::uint64_t seed, int truncation) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  if (p < 0) throw std::invalid_argument("p must be non-negative");
  if (truncation < 0) throw std::invalid_argument("truncation must be positive");
  const double lambda = bc.lambda();
  if (truncation == 0) truncation = defaultTruncation(lambda);

  MomentEstimate est;
  est.samples = samples;
  est.truncation = truncation;
  const double tail = std::pow(lambda, truncation) / (1.0 - lambda);
  const double zmax = 1.0 / (1.0 - lambda);
  est.truncation_bias_bound =
      p >= 1.0 ? tail * p * std::pow(zmax, p - 1.0) : std::pow(tail, p);

  if (p == 0.0) {
    est.mean = 1.0;
    return est;
  }

  // Byte tables: table[b][v] = lambda^{8b} sum_{i<8, 8b+i<T} lambda^i (+/-1 by bit i of v).
  const int bytes = (truncation + 7) / 8;
  std::vector<double> table(static_cast<std::size_t>(bytes) * 256);
  for (int b = 0; b < bytes; ++b) {
    for (int v = 0; v < 256; ++v) {
      double s = 0.0;
      for (int i = 7; i >= 0; --i) {
        const int level = 8 * b + i;
        if (level >= truncation) continue;
        s += ((v >> i) & 1 ? -1.0 : 1.0) * std::pow(lambda, level);
      }
      table[static_cast<std::size_t>(b) * 256 + v] = s;
    }
  }
  const int words = (bytes + 7) / 8;
  const std::uint64_t key = mix64(seed ^ 0x5DEECE66DULL);

  constexpr std::uint64_t kChunk = 1 << 15;
  const std::size_t chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  std::vector<Welford> partial(chunks);
  parallelFor(chunks, [&](std::size_t c) {
    Welford w;
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
      double z = 0.0;
      // Smallest contributions first.
      for (int wd = words - 1; wd >= 0; --wd) {
        const std::uint64_t bits = mix64(key + i * static_cast<std::uint64_t>(words) + wd);
        for (int j = 7; j >= 0; --j) {
          const int b = wd * 8 + j;
          if (b >= bytes) continue;
          z += table[static_cast<std::size_t>(b) * 256 + ((bits >> (8 * j)) & 0xFF)];
        }
      }
      w.add(absPow(z, p));
    }
    partial[c] = w;
  });
  Welford total;
  for (const auto& w : partial) total.merge(w);
  est.mean = total.mean;
  est.standard_error =
      total.n > 1 ? std::sqrt(total.m2 / (total.n - 1) / total.n) : 0.0;
  return est;
}

}  // namespace takagi
