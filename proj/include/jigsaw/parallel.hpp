#ifndef JIGSAW_PARALLEL_HPP
#define JIGSAW_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace jigsaw {

// Runs fn(i) for i in [0, count) on `workers` threads. Tasks claim indices
// from a shared counter; results must be written to per-index slots so the
// outcome is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const unsigned nw = std::min<std::size_t>(workers, count);
  pool.reserve(nw);
  for (unsigned w = 0; w < nw; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace jigsaw

#endif
