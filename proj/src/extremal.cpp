#include "takagi/extremal.hpp"

#include <cmath>
#include <stdexcept>

#include "takagi/dyadic.hpp"
#include "takagi/parallel.hpp"

namespace takagi {

ExtremeResult maxValue(const Hurst& h) {
  return {1.0 / (3.0 * (1.0 - std::exp2(-h.value()))), {1.0 / 3.0, 2.0 / 3.0}, std::nullopt};
}

std::int64_t jacobsthal(int n) {
  if (n < 0 || n > 62) throw std::out_of_range("Jacobsthal index must be in [0,62]");
  const std::int64_t pow2 = std::int64_t{1} << n;
  return (pow2 - (n % 2 == 0 ? 1 : -1)) / 3;
}

ExtremeResult truncatedMax(const Hurst& h, int n) {
  if (n < 1) throw std::invalid_argument("truncated maximum needs n >= 1");
  if (n > 62) throw std::out_of_range("truncated maximum limited to n <= 62");
  const double H = h.value();
  const double sign = n % 2 == 1 ? 1.0 : -1.0;  // (-1)^{n-1}
  const double value = 1.0 / (3.0 * (1.0 - std::exp2(-H))) +
                       sign / (3.0 * (std::exp2(1.0 - H) + 1.0) * std::exp2(n)) -
                       std::exp2(-n * H) / ((1.0 + std::exp2(1.0 - H)) * (std::exp2(H) - 1.0));
  const double t_minus = std::ldexp(static_cast<double>(jacobsthal(n)), -n);
  return {value, {t_minus, 1.0 - t_minus}, n};
}

ExtremeResult gridMax(const SignedTLFunction& x, int n) {
  const Eigen::VectorXd v = gridValues(x, n);
  ExtremeResult r;
  r.value = v.maxCoeff();
  r.level = n;
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (v[k] == r.value) r.locations.push_back(std::ldexp(static_cast<double>(k), -n));
  return r;
}

Oscillation uniformOscillation(const Hurst& h) {
  const double a = std::exp2(h.value());
  return {(a + 3.0) / (6.0 * (a - 1.0)), 1.0 / 3.0, 5.0 / 6.0};
}

int nu(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::domain_error("nu needs a positive finite h");
  int e = 0;
  const double f = std::frexp(h, &e);  // h = f 2^e, f in [1/2, 1)
  // -log2 h = -e - log2 f lies in (-e, -e + 1], with the right end exactly
  // when f = 1/2.
  return f == 0.5 ? 1 - e : -e;
}

double omega(const Hurst& h, double step) {
  if (!(step > 0.0 && step < 1.0)) throw std::domain_error("omega needs 0 < h < 1");
  const double H = h.value();
  const int v = nu(step);
  return step * std::exp2((v - 1) * (1.0 - H)) / (std::exp2(1.0 - H) - 1.0) +
         std::exp2((1 - v) * H) / (3.0 * (1.0 - std::exp2(-H)));
}

OmegaBracket omegaBracket(const Hurst& h) {
  // h 2^{nu(1-H)} in [2^{H-1} h^H, h^H] and 2^{-nu H} in [h^H, 2^H h^H].
  const double H = h.value();
  const double a = std::exp2(H - 1.0) / (std::exp2(1.0 - H) - 1.0);
  const double b = std::exp2(H) / (3.0 * (1.0 - std::exp2(-H)));
  return {a * std::exp2(H - 1.0) + b, a + b * std::exp2(H)};
}

ModulusReport modulusCheck(const SignedTLFunction& x, int n, double bound_factor) {
  if (n < 1 || n > 22) throw std::length_error("modulus check level must be in [1,22]");
  if (!(bound_factor > 0.0)) throw std::invalid_argument("bound factor must be positive");
  const Eigen::VectorXd v = gridValues(x, n);
  const Eigen::Index cells = Eigen::Index{1} << n;

  ModulusReport rep;
  rep.level = n;
  rep.bound_factor = bound_factor;
  rep.rows.resize(static_cast<std::size_t>(cells - 1));
  std::vector<Eigen::Index> where(rep.rows.size(), 0);
  parallelFor(rep.rows.size(), [&](std::size_t i) {
    const Eigen::Index lag = static_cast<Eigen::Index>(i) + 1;
    const Eigen::Index len = cells + 1 - lag;
    Eigen::Index at = 0;
    const double inc = (v.tail(len) - v.head(len)).cwiseAbs().maxCoeff(&at);
    ModulusRow& row = rep.rows[i];
    row.h = std::ldexp(static_cast<double>(lag), -n);
    row.omega = omega(x.hurst, row.h);
    row.max_increment = inc;
    row.max_ratio = inc / (bound_factor * row.omega);
    where[i] = at;
  });
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (rep.rows[i].max_ratio > rep.max_ratio) {
      rep.max_ratio = rep.rows[i].max_ratio;
      rep.h_at_max = rep.rows[i].h;
      rep.t_at_max = std::ldexp(static_cast<double>(where[i]), -n);
    }
  }
  return rep;
}

SharpnessPoint sharpnessSequence(const Hurst& h, int n) {
  if (n < 2 || n > 60) throw std::out_of_range("sharpness index must be in [2,60]");
  const double H = h.value();
  SharpnessPoint s;
  s.n = n;
  const Rational exact_h(BigInt(2), BigInt(3) * (BigInt(1) << n));
  s.h = toDouble(exact_h);
  s.nu = nu(s.h);
  s.lhs = eval(takagiLandsberg(h), exact_h, 1e-12).value;
  s.omega = omega(h, s.h);
  s.identity_rhs = s.omega - s.h / (std::exp2(1.0 - H) - 1.0);
  s.ratio = s.lhs / s.omega;
  return s;
}

}  // namespace takagi
