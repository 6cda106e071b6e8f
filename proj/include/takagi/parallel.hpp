#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace takagi {

/// Worker cap for the data-parallel kernels. Defaults to the
/// TAKAGI_LAB_THREADS environment variable, else hardware concurrency.
int nbThreads();
void setNbThreads(int n);

/// Runs fn(i) for i in [0, count) on up to nbThreads() workers. Each index
/// is processed exactly once; callers write into per-index slots so results
/// do not depend on the schedule.
void parallelFor(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Pairwise (tree) summation with a fixed split order.
double pairwiseSum(std::span<const double> v);

}  // namespace takagi
