#include "takagi/tl_function.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace takagi {

namespace {

void checkUnitOpen(double H) {
  if (!(H > 0.0 && H < 1.0)) throw std::invalid_argument("Hurst parameter must lie in (0,1)");
}

// Binary expansion of a double in [0,1). Every step is exact.
class DoubleCursor {
 public:
  explicit DoubleCursor(double t) : u_(t) {}
  double frac() const { return u_; }
  bool atZero() const { return u_ == 0.0; }
  bool step() {
    u_ *= 2.0;
    const bool bit = u_ >= 1.0;
    if (bit) u_ -= 1.0;
    return bit;
  }

 private:
  double u_;
};

// Binary expansion of num/den in [0,1) with exact integer remainders.
template <typename Int>
class RationalCursor {
 public:
  RationalCursor(Int num, Int den) : r_(num), den_(den), inv_den_(1.0 / static_cast<double>(den)) {}
  double frac() const {
    if constexpr (std::is_same_v<Int, std::uint64_t>) {
      return static_cast<double>(r_) * inv_den_;
    } else {
      return Rational(r_, den_).template convert_to<double>();
    }
  }
  bool atZero() const { return r_ == 0; }
  bool step() {
    r_ *= 2;
    const bool bit = r_ >= den_;
    if (bit) r_ -= den_;
    return bit;
  }

 private:
  Int r_;
  Int den_;
  double inv_den_;
};

// Shared descent: sums theta_{m,k_m} 2^{-mH} e00(frac(2^m t)) over m < n.
template <typename Cursor>
EvalResult descend(const SignedTLFunction& x, int n, Cursor cursor) {
  const double H = x.hurst.value();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(std::min(n, 256)));
  std::uint64_t k = 0;
  bool right_half = false;
  int m = 0;
  for (; m < n; ++m) {
    if (cursor.atZero()) break;
    const double u = cursor.frac();
    const double tent = eval_e00(u);
    Sign theta;
    if (m <= kMaxAddressableGeneration) {
      theta = x.coeffs.get(m, k);
    } else {
      theta = x.coeffs.branchSign(m, right_half);
    }
    terms.push_back(theta * std::exp2(-m * H) * tent);
    const bool bit = cursor.step();
    if (m == 0) right_half = bit;
    if (m < kMaxAddressableGeneration) k = 2 * k + (bit ? 1 : 0);
  }
  double sum = 0.0;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
  return {sum, m};
}

void checkUnitClosed(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("t must lie in [0,1]");
}

EvalResult descendDouble(const SignedTLFunction& x, int n, double t) {
  checkUnitClosed(t);
  if (n <= 0 || t == 1.0) return {0.0, 0};
  return descend(x, n, DoubleCursor(t));
}

EvalResult descendRational(const SignedTLFunction& x, int n, const Rational& t) {
  if (t < 0 || t > 1) throw std::domain_error("t must lie in [0,1]");
  if (n <= 0 || t == 1) return {0.0, 0};
  const BigInt num = numerator(t);
  const BigInt den = denominator(t);
  if (den < (BigInt(1) << 62)) {
    return descend(x, n,
                   RationalCursor<std::uint64_t>(num.convert_to<std::uint64_t>(),
                                                 den.convert_to<std::uint64_t>()));
  }
  return descend(x, n, RationalCursor<BigInt>(num, den));
}

}  // namespace

Hurst::Hurst(double H) : H_(H), lambda_(0.0) {
  checkUnitOpen(H);
  lambda_ = std::exp2(H - 1.0);
}

Hurst::Hurst(const Rational& H) : Hurst(toDouble(H)) {
  if (H <= 0 || H >= 1) throw std::invalid_argument("Hurst parameter must lie in (0,1)");
  exact_ = H;
}

Hurst Hurst::parse(const std::string& text) { return Hurst(parseRational(text)); }

Float50 Hurst::value50() const {
  if (exact_) return Float50(numerator(*exact_)) / Float50(denominator(*exact_));
  return Float50(H_);
}

Float50 Hurst::lambda50() const { return boost::multiprecision::exp2(value50() - 1); }

std::optional<int> Hurst::integerPStar() const {
  if (exact_) {
    if (numerator(*exact_) != 1) return std::nullopt;
    return denominator(*exact_).convert_to<int>();
  }
  const double p = 1.0 / H_;
  const double r = std::round(p);
  if (std::abs(p - r) <= 1e-12 * p) return static_cast<int>(r);
  return std::nullopt;
}

std::optional<int> Hurst::evenPStar() const {
  auto p = integerPStar();
  if (p && *p % 2 == 0) return p;
  return std::nullopt;
}

std::string Hurst::toString() const {
  if (exact_) return exact_->str();
  return std::to_string(H_);
}

double tailBound(const Hurst& h, int n) {
  const double H = h.value();
  return std::exp2(-n * H) / (2.0 * (1.0 - std::exp2(-H)));
}

int truncationLevel(const Hurst& h, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double H = h.value();
  // Solve 2^{-nH} <= 2 eps (1 - 2^{-H}), then correct for rounding.
  const double target = 2.0 * eps * (1.0 - std::exp2(-H));
  int n = target >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log2(target) / H));
  while (n > 0 && tailBound(h, n - 1) <= eps) --n;
  while (tailBound(h, n) > eps) ++n;
  return n;
}

double evalTruncated(const SignedTLFunction& x, int n, double t) {
  return descendDouble(x, n, t).value;
}

double evalTruncated(const SignedTLFunction& x, int n, const Rational& t) {
  return descendRational(x, n, t).value;
}

EvalResult eval(const SignedTLFunction& x, double t, double eps) {
  return descendDouble(x, truncationLevel(x.hurst, eps), t);
}

EvalResult eval(const SignedTLFunction& x, const Rational& t, double eps) {
  return descendRational(x, truncationLevel(x.hurst, eps), t);
}

}  // namespace takagi
