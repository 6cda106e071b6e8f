#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "takagi/basis.hpp"

namespace takagi {

/// A sign +1 or -1.
using Sign = std::int8_t;

enum class CoefficientKind { AllPlus, Tilde, Seeded, Explicit };

/// Rule assigning theta_{m,k} in {-1,+1} to every Faber-Schauder index.
///
/// Sources are immutable values; copies share the explicit rows.
class CoefficientSource {
 public:
  /// theta = +1 everywhere (the Takagi-Landsberg function itself).
  static CoefficientSource allPlus();
  /// +1 on the left half of every generation m >= 1, -1 on the right half,
  /// and +1 at (0,0).
  static CoefficientSource tilde();
  /// Signs from a counter-based hash of (seed, m, k).
  static CoefficientSource seeded(std::uint64_t seed);
  /// Caller-supplied rows; row m must have exactly 2^m entries of +/-1.
  static CoefficientSource fromRows(std::vector<std::vector<Sign>> rows);
  /// Reads a JSON array of arrays of +1/-1.
  static CoefficientSource fromJson(std::istream& in);
  /// Parses "plus", "tilde", "seeded:<seed>" or "explicit:<path>".
  static CoefficientSource parse(const std::string& spec);

  CoefficientKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }

  /// theta_{m,k}. Throws std::out_of_range for an invalid index or a
  /// generation beyond the explicit rows.
  Sign get(int m, std::uint64_t k) const;
  Sign get(const FSIndex& idx) const { return get(idx.m, idx.k); }

  /// theta at generation m on the branch through a point whose first
  /// binary digit is `right_half`. Only available for sources whose sign
  /// does not depend on the finer offset bits (AllPlus, Tilde); used to
  /// descend past generation 63.
  Sign branchSign(int m, bool right_half) const;

  /// True when branchSign() is defined at every depth.
  bool isStationary() const {
    return kind_ == CoefficientKind::AllPlus || kind_ == CoefficientKind::Tilde;
  }

  /// Number of generations available; -1 when unbounded.
  int depth() const;

  std::string describe() const;

 private:
  CoefficientSource(CoefficientKind kind, std::uint64_t seed,
                    std::shared_ptr<const std::vector<std::vector<Sign>>> rows)
      : kind_(kind), seed_(seed), rows_(std::move(rows)) {}

  CoefficientKind kind_;
  std::uint64_t seed_ = 0;
  std::shared_ptr<const std::vector<std::vector<Sign>>> rows_;
};

/// SplitMix64 finalizer; the counter-based mixer behind seeded signs and
/// the Monte Carlo sampler.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace takagi
