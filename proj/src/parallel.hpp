#ifndef NNC_SRC_PARALLEL_HPP
#define NNC_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace nnc::detail {

// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each, one
// chunk per worker. Callers only use this where per-index work is independent
// and reductions are order-insensitive, so results stay deterministic.
template <class Fn>
void parallel_chunks(std::size_t n, Fn&& fn) {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::size_t workers = std::min(hw, std::max<std::size_t>(1, n / 1024));
  if (workers <= 1 || n < 2048) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t b = w * chunk;
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace nnc::detail

#endif  // NNC_SRC_PARALLEL_HPP
