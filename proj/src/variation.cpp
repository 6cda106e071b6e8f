#include "takagi/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "takagi/bernoulli.hpp"
#include "takagi/parallel.hpp"

namespace takagi {

namespace {

// |d|^p with repeated squaring for small integer exponents.
struct PowerKernel {
  double p;
  int ip = -1;

  explicit PowerKernel(double exponent) : p(exponent) {
    if (exponent >= 0 && exponent <= 64 && std::floor(exponent) == exponent)
      ip = static_cast<int>(exponent);
  }

  double operator()(double d) const {
    if (ip < 0) return std::pow(d, p);
    double result = 1.0, base = d;
    for (int e = ip; e > 0; e >>= 1) {
      if (e & 1) result *= base;
      base *= base;
    }
    return result;
  }
};

double sumPowers(const SignedTLFunction& x, int n, std::uint64_t count, bool absolute, double p,
                 int max_level) {
  if (n < 1) throw std::invalid_argument("variation needs n >= 1");
  const PowerKernel pw(p);
  return reduceIncrementChunks(
      x, n,
      [&](std::uint64_t first, std::span<const double> chunk) {
        if (first >= count) return 0.0;
        const std::size_t len =
            static_cast<std::size_t>(std::min<std::uint64_t>(chunk.size(), count - first));
        thread_local std::vector<double> terms;
        terms.resize(len);
        for (std::size_t i = 0; i < len; ++i) terms[i] = pw(absolute ? std::abs(chunk[i]) : chunk[i]);
        return pairwiseSum(terms);
      },
      kDefaultChunkBits, max_level);
}

}  // namespace

std::string toString(Regime r) {
  switch (r) {
    case Regime::Vanishes:
      return "VANISHES";
    case Regime::Diverges:
      return "DIVERGES";
    case Regime::Linear:
      return "LINEAR";
  }
  return "?";
}

Regime classifyRegime(const Hurst& h, const ExactReal& p) {
  if (h.exact() && p.exact) {
    const Rational ph = *p.exact * *h.exact();
    if (ph == 1) return Regime::Linear;
    return ph > 1 ? Regime::Vanishes : Regime::Diverges;
  }
  const double ph = p.value * h.value();
  if (std::abs(ph - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) return Regime::Linear;
  return ph > 1.0 ? Regime::Vanishes : Regime::Diverges;
}

std::uint64_t cellsUpTo(double t, int n) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("t must lie in [0,1]");
  const std::uint64_t cells = std::uint64_t{1} << n;
  const auto last = static_cast<std::uint64_t>(std::floor(std::ldexp(t, n)));
  return std::min(last, cells - 1) + 1;
}

double vn(const SignedTLFunction& x, double p, double t, int n, int max_level) {
  if (p < 0) throw std::invalid_argument("p must be non-negative");
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("t must lie in (0,1]");
  if (n < 1) throw std::invalid_argument("variation needs n >= 1");
  return sumPowers(x, n, cellsUpTo(t, n), true, p, max_level);
}

double vnSigned(const SignedTLFunction& x, int p, double t, int n, int max_level) {
  if (p < 1 || p % 2 == 0) throw std::invalid_argument("signed variation needs an odd p");
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("t must lie in (0,1]");
  if (n < 1) throw std::invalid_argument("variation needs n >= 1");
  return sumPowers(x, n, cellsUpTo(t, n), false, p, max_level);
}

EnumerationCheck enumerationCheck(const SignedTLFunction& x, double p, int n) {
  if (n < 1 || n > 20) throw std::length_error("enumeration check level must be in [1,20]");
  EnumerationCheck out;
  out.n = n;
  out.p = p;

  const SignMatrix s = signMatrix(x, n);
  std::vector<bool> seen(std::size_t{1} << n, false);
  bool complete = true;
  for (Eigen::Index k = 0; k < s.cols(); ++k) {
    std::size_t code = 0;
    for (int m = 0; m < n; ++m)
      if (s(m, k) < 0) code |= std::size_t{1} << m;
    complete = complete && !seen[code];
    seen[code] = true;
  }
  out.columns_complete = complete;

  const PowerKernel pw(p);
  const double lambda_inv = std::exp2(1.0 - x.hurst.value());
  std::vector<double> weight(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) weight[m] = std::ldexp(std::pow(lambda_inv, m), -n);
  std::vector<double> terms(seen.size());
  parallelFor(terms.size(), [&](std::size_t mask) {
    double d = 0.0;
    for (int m = 0; m < n; ++m) d += (mask >> m) & 1 ? -weight[m] : weight[m];
    terms[mask] = pw(std::abs(d));
  });
  out.vn_enumerated = pairwiseSum(terms);
  out.vn = vn(x, p, 1.0, n);
  out.relative_difference = std::abs(out.vn - out.vn_enumerated) / std::max(std::abs(out.vn_enumerated), 1e-300);
  return out;
}

SlopeEstimate predictedSlope(const Hurst& h, const MonteCarloOptions& mc, bool force_monte_carlo) {
  const double prefactor = std::exp2(1.0 - h.pStar());
  const auto bc = BernoulliConvolution::fromHurst(h);
  if (const auto p = h.evenPStar(); p && !force_monte_carlo) {
    const Float50 scale = boost::multiprecision::exp2(Float50(1 - *p));
    const Float50 m = evenMoment<Float50>(bc.lambda50(), *p);
    return {(scale * m).convert_to<double>(), 0.0, true, "even-moment recursion"};
  }
  const auto est = sampleAbsMoment(bc, h.pStar(), mc.samples, mc.seed, mc.truncation);
  return {prefactor * est.mean, prefactor * est.standard_error, false, "monte carlo"};
}

double truncatedSlope(const Hurst& h, int n) {
  const auto p = h.evenPStar();
  if (!p) throw std::invalid_argument("truncated slope needs 1/H to be an even integer");
  if (n < 1) throw std::invalid_argument("truncated slope needs n >= 1");
  const Float50 scale = boost::multiprecision::exp2(Float50(1 - *p));
  return (scale * truncatedEvenMoment<Float50>(h.lambda50(), *p, n)).convert_to<double>();
}

VariationReport convergenceReport(const SignedTLFunction& x, const ExactReal& p, double t,
                                  int n_max, int max_level, const MonteCarloOptions& mc) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (n_max > max_level) throw std::length_error("n_max exceeds the configured maximum level");
  VariationReport r;
  r.H = x.hurst.value();
  r.p = p.value;
  r.t = t;
  for (int n = 1; n <= n_max; ++n) r.levels.push_back({n, vn(x, p.value, t, n, max_level)});
  r.regime = classifyRegime(x.hurst, p);
  switch (r.regime) {
    case Regime::Vanishes:
      r.predicted_limit = 0.0;
      break;
    case Regime::Diverges:
      r.predicted_limit = std::numeric_limits<double>::infinity();
      break;
    case Regime::Linear: {
      const auto s = predictedSlope(x.hurst, mc);
      r.predicted_limit = t * s.value;
      r.predicted_limit_error = t * s.standard_error;
      break;
    }
  }
  return r;
}

std::vector<Rational> defaultSlopeGrid() {
  std::vector<Rational> grid;
  for (int k = 1; k <= 49; ++k) grid.emplace_back(k, 50);
  grid.emplace_back(1, 4);
  std::sort(grid.begin(), grid.end());
  return grid;
}

std::vector<SlopeCurvePoint> slopeCurve(const std::vector<Rational>& grid,
                                        const MonteCarloOptions& mc) {
  std::vector<SlopeCurvePoint> out;
  out.reserve(grid.size());
  for (const auto& H : grid) {
    const Hurst h(H);
    out.push_back({h.value(), predictedSlope(h, mc)});
  }
  return out;
}

}  // namespace takagi
