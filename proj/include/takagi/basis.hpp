#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace takagi {

/// Deepest generation whose offsets fit in a 64-bit index.
inline constexpr int kMaxAddressableGeneration = 63;

/// Index (m, k) of the Faber-Schauder function e_{m,k}, supported on
/// [k 2^-m, (k+1) 2^-m].
struct FSIndex {
  int m = 0;
  std::uint64_t k = 0;

  constexpr FSIndex() = default;
  constexpr FSIndex(int generation, std::uint64_t offset) : m(generation), k(offset) {}

  /// True when 0 <= m <= 63 and k < 2^m.
  constexpr bool valid() const {
    if (m < 0 || m > kMaxAddressableGeneration) return false;
    return k < (std::uint64_t{1} << m);
  }

  friend constexpr bool operator==(const FSIndex&, const FSIndex&) = default;
};

inline void checkIndex(const FSIndex& idx) {
  if (!idx.valid()) throw std::out_of_range("Faber-Schauder index out of range");
}

/// Tent function (min{t, 1-t})^+.
template <typename Scalar>
constexpr Scalar eval_e00(Scalar t) {
  using std::min;
  const Scalar v = min(t, Scalar(1) - t);
  return v > Scalar(0) ? v : Scalar(0);
}

/// e_{m,k}(t) = 2^{-m/2} e00(2^m t - k). Defined on all of R; the scaled
/// argument is formed with ldexp so dyadic t is handled exactly.
template <typename Scalar>
Scalar eval_emk(const FSIndex& idx, Scalar t) {
  using std::exp2;
  using std::ldexp;
  const Scalar u = ldexp(t, idx.m) - static_cast<Scalar>(idx.k);
  return exp2(Scalar(-0.5) * Scalar(idx.m)) * eval_e00(u);
}

/// Same as above with a signed offset. Used by the translation identity,
/// where k + l may leave [0, 2^m).
template <typename Scalar>
Scalar eval_emk(int m, std::int64_t k, Scalar t) {
  using std::exp2;
  using std::ldexp;
  const Scalar u = ldexp(t, m) - static_cast<Scalar>(k);
  return exp2(Scalar(-0.5) * Scalar(m)) * eval_e00(u);
}

}  // namespace takagi
