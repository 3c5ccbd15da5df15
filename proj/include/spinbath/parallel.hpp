#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace spinbath {

/// Worker count used by the compute kernels. Resolution order: an explicit
/// set_thread_count(n > 0), then SPINBATH_THREADS (0 or unset = auto), then
/// std::thread::hardware_concurrency().
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Work is split
/// into contiguous blocks; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Pairwise summation; error grows like O(log n) instead of O(n).
double pairwise_sum(std::span<const double> xs);

}  // namespace spinbath
