// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_PARALLEL_HPP
#define ISP_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace isp
{

// Worker count from ISP_THREADS, else the hardware concurrency (at least 1).
std::size_t worker_count();

// Calls body(i) for i in [0, count) on up to `workers` threads. Indices are handed out
// dynamically; the first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body,
                  std::size_t workers = worker_count());

}  // namespace isp

#endif  // ISP_PARALLEL_HPP
