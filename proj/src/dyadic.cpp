#include "takagi/dyadic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "takagi/parallel.hpp"

namespace takagi {

namespace {

void checkLevel(int n, int max_level) {
  if (n < 0) throw std::invalid_argument("level must be non-negative");
  if (n > max_level || n > kDefaultMaxLevel)
    throw std::length_error("level " + std::to_string(n) + " exceeds maximum " +
                            std::to_string(std::min(max_level, kDefaultMaxLevel)));
}

void checkInMemory(int n) {
  if (n > kMaxInMemoryLevel)
    throw std::length_error("level " + std::to_string(n) +
                            " is above the in-memory limit; use the streaming kernels");
}

// Refines buf[0..count) in place from generation `m` to `m + 1`. The cells
// are the descendants of offset `base` at generation m, i.e. offsets
// base .. base + count - 1.
void refineInPlace(const SignedTLFunction& x, int m, std::uint64_t base, double* buf,
                   std::size_t count) {
  const double w = levelWeight(x.hurst, m);
  for (std::size_t i = count; i-- > 0;) {
    const double half = buf[i] * 0.5;
    const double step = x.coeffs.get(m, base + i) * w;
    buf[2 * i + 1] = half - step;
    buf[2 * i] = half + step;
  }
}

}  // namespace

IncrementTable IncrementTable::initial() { return {0, Eigen::VectorXd::Zero(1)}; }

double levelWeight(const Hurst& h, int n) { return std::exp2(-n * h.value() - 1.0); }

IncrementTable refine(const SignedTLFunction& x, const IncrementTable& table, int max_level) {
  checkLevel(table.level + 1, max_level);
  checkInMemory(table.level + 1);
  IncrementTable out{table.level + 1, Eigen::VectorXd(2 * table.d.size())};
  out.d.head(table.d.size()) = table.d;
  refineInPlace(x, table.level, 0, out.d.data(), static_cast<std::size_t>(table.d.size()));
  return out;
}

IncrementTable increments(const SignedTLFunction& x, int n, int max_level) {
  checkLevel(n, max_level);
  checkInMemory(n);
  IncrementTable t{n, Eigen::VectorXd::Zero(Eigen::Index{1} << n)};
  for (int m = 0; m < n; ++m) refineInPlace(x, m, 0, t.d.data(), std::size_t{1} << m);
  return t;
}

Eigen::VectorXd gridValues(const SignedTLFunction& x, int n, int max_level) {
  checkLevel(n, max_level);
  checkInMemory(n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero((Eigen::Index{1} << n) + 1);
  // v holds level-m values at stride 2^{n-m}.
  for (int m = 0; m < n; ++m) {
    const double w = levelWeight(x.hurst, m);
    const Eigen::Index stride = Eigen::Index{1} << (n - m);
    const Eigen::Index half = stride / 2;
    const std::uint64_t cells = std::uint64_t{1} << m;
    for (std::uint64_t k = 0; k < cells; ++k) {
      const Eigen::Index left = static_cast<Eigen::Index>(k) * stride;
      v[left + half] = 0.5 * (v[left] + v[left + stride]) + x.coeffs.get(m, k) * w;
    }
  }
  return v;
}

SignMatrix signMatrix(const SignedTLFunction& x, int n) {
  if (n < 0 || n > 20) throw std::length_error("sign matrix level must be in [0,20]");
  const Eigen::Index cols = Eigen::Index{1} << n;
  SignMatrix s(n, cols);
  for (int m = 0; m < n; ++m) {
    const int shift = n - m;
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto uk = static_cast<std::uint64_t>(k);
      const bool right = (uk >> (shift - 1)) & 1U;
      const Sign theta = x.coeffs.get(m, uk >> shift);
      s(m, k) = static_cast<std::int8_t>(right ? -theta : theta);
    }
  }
  return s;
}

namespace {

struct ChunkPlan {
  int top_level;
  int sub_levels;
  IncrementTable top;
};

ChunkPlan planChunks(const SignedTLFunction& x, int n, int chunk_bits, int max_level) {
  checkLevel(n, max_level);
  if (chunk_bits < 0) throw std::invalid_argument("chunk_bits must be non-negative");
  const int sub = std::min(n, chunk_bits);
  const int top_level = n - sub;
  checkInMemory(top_level);
  return {top_level, sub, increments(x, top_level, max_level)};
}

void expandChunk(const SignedTLFunction& x, const ChunkPlan& plan, std::uint64_t root,
                 std::vector<double>& buf) {
  buf.assign(std::size_t{1} << plan.sub_levels, 0.0);
  buf[0] = plan.top.d[static_cast<Eigen::Index>(root)];
  for (int j = 0; j < plan.sub_levels; ++j) {
    const int m = plan.top_level + j;
    refineInPlace(x, m, root << j, buf.data(), std::size_t{1} << j);
  }
}

}  // namespace

void forEachIncrementChunk(
    const SignedTLFunction& x, int n,
    const std::function<void(std::uint64_t first, std::span<const double> chunk)>& visit,
    int chunk_bits, int max_level) {
  const ChunkPlan plan = planChunks(x, n, chunk_bits, max_level);
  std::vector<double> buf;
  const std::uint64_t roots = std::uint64_t{1} << plan.top_level;
  for (std::uint64_t r = 0; r < roots; ++r) {
    expandChunk(x, plan, r, buf);
    visit(r << plan.sub_levels, buf);
  }
}

double reduceIncrementChunks(
    const SignedTLFunction& x, int n,
    const std::function<double(std::uint64_t first, std::span<const double> chunk)>& reduce,
    int chunk_bits, int max_level) {
  const ChunkPlan plan = planChunks(x, n, chunk_bits, max_level);
  const std::size_t roots = std::size_t{1} << plan.top_level;
  std::vector<double> partial(roots, 0.0);
  parallelFor(roots, [&](std::size_t r) {
    thread_local std::vector<double> buf;
    expandChunk(x, plan, r, buf);
    partial[r] = reduce(static_cast<std::uint64_t>(r) << plan.sub_levels, buf);
  });
  return pairwiseSum(partial);
}

}  // namespace takagi
