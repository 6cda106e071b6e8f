#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include <Eigen/Core>

#include "takagi/tl_function.hpp"

namespace takagi {

/// Largest level any grid kernel will accept.
inline constexpr int kDefaultMaxLevel = 30;
/// Largest level materialized in memory; deeper levels must stream.
inline constexpr int kMaxInMemoryLevel = 24;
/// log2 of the streaming chunk length.
inline constexpr int kDefaultChunkBits = 16;

using SignMatrix = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Dyadic partition T_n = {k 2^-n : k = 0..2^n}.
struct DyadicPartition {
  int level = 0;

  std::uint64_t cells() const { return std::uint64_t{1} << level; }
  double point(std::uint64_t k) const { return std::ldexp(static_cast<double>(k), -level); }
  /// Successor s' of s = k 2^-n; the last point is its own successor.
  double successor(std::uint64_t k) const { return k >= cells() ? 1.0 : point(k + 1); }
};

/// Increments d[k] = x((k+1) 2^-n) - x(k 2^-n) on the level-n grid.
struct IncrementTable {
  int level = 0;
  Eigen::VectorXd d;

  /// Level 0: the single increment x(1) - x(0) = 0.
  static IncrementTable initial();
};

/// Per-level increment weight 2^{-nH-1}: half a level-n tent's rise.
double levelWeight(const Hurst& h, int n);

/// Level n -> n+1 via d'[2k] = d[k]/2 + theta_{n,k} w_n,
/// d'[2k+1] = d[k]/2 - theta_{n,k} w_n. Throws std::length_error past
/// max_level.
IncrementTable refine(const SignedTLFunction& x, const IncrementTable& table,
                      int max_level = kDefaultMaxLevel);

/// The level-n table, materialized. Requires n <= kMaxInMemoryLevel.
IncrementTable increments(const SignedTLFunction& x, int n, int max_level = kDefaultMaxLevel);

/// Exact values x(k 2^-n), k = 0..2^n, by midpoint refinement: coarse points
/// keep their values bit-for-bit and each new midpoint is the average of
/// its neighbours plus theta_{n,k} w_n.
Eigen::VectorXd gridValues(const SignedTLFunction& x, int n, int max_level = kDefaultMaxLevel);

/// sigma_{m,k}: sign of the generation-m slope on the k-th level-n cell.
/// Row m, column k. Requires n <= 20.
SignMatrix signMatrix(const SignedTLFunction& x, int n);

/// Streams the level-n increments in chunks of 2^chunk_bits cells. Each
/// chunk is expanded from its ancestor increment at level n - chunk_bits, so
/// memory stays O(2^chunk_bits + 2^{n-chunk_bits}). The values are
/// bit-identical to increments(x, n). Chunks are visited in increasing
/// order, one at a time.
void forEachIncrementChunk(
    const SignedTLFunction& x, int n,
    const std::function<void(std::uint64_t first, std::span<const double> chunk)>& visit,
    int chunk_bits = kDefaultChunkBits, int max_level = kDefaultMaxLevel);

/// Applies `reduce` to every chunk, possibly concurrently, and combines the
/// per-chunk results by pairwise summation in chunk order. The result does
/// not depend on the number of threads.
double reduceIncrementChunks(
    const SignedTLFunction& x, int n,
    const std::function<double(std::uint64_t first, std::span<const double> chunk)>& reduce,
    int chunk_bits = kDefaultChunkBits, int max_level = kDefaultMaxLevel);

}  // namespace takagi
