// SPDX-License-Identifier: Apache-2.0

#include "isp/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace isp
{

std::size_t worker_count()
{
  if (const char *env = std::getenv("ISP_THREADS"))
  {
    try
    {
      const long v = std::stol(env);
      if (v > 0)
      {
        return static_cast<std::size_t>(v);
      }
    }
    catch (const std::exception &)
    {
      // Unparsable values fall back to the hardware default.
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body,
                  std::size_t workers)
{
  if (workers <= 1 || count <= 1)
  {
    for (std::size_t i = 0; i < count; i++)
    {
      body(i);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (!failed.load())
    {
      const std::size_t i = next.fetch_add(1);
      if (i >= count)
      {
        return;
      }
      try
      {
        body(i);
      }
      catch (...)
      {
        std::lock_guard lock(error_mutex);
        if (!first_error)
        {
          first_error = std::current_exception();
        }
        failed = true;
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min(workers, count);
    pool.reserve(n);
    for (std::size_t t = 0; t < n; t++)
    {
      pool.emplace_back(worker);
    }
  }
  if (first_error)
  {
    std::rethrow_exception(first_error);
  }
}

}  // namespace isp
