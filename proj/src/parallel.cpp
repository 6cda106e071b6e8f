#include "takagi/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace takagi {

namespace {

int defaultThreads() {
  if (const char* env = std::getenv("TAKAGI_LAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<int>& threadSetting() {
  static std::atomic<int> n{defaultThreads()};
  return n;
}

}  // namespace

int nbThreads() { return threadSetting().load(); }

void setNbThreads(int n) { threadSetting().store(n > 0 ? n : defaultThreads()); }

void parallelFor(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(nbThreads()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double pairwiseSum(std::span<const double> v) {
  constexpr std::size_t kBlock = 16;
  if (v.size() <= kBlock) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwiseSum(v.first(half)) + pairwiseSum(v.subspan(half));
}

}  // namespace takagi
