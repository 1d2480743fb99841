#include "levymult/threading.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace levymult {

int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LEVYMULT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

void parallel_blocks(std::size_t count, std::size_t block_size, int threads,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& fn) {
  if (count == 0) return;
  if (block_size == 0) block_size = 1;
  const std::size_t n_blocks = (count + block_size - 1) / block_size;
  const int n_threads = std::min<std::size_t>(effective_threads(threads), n_blocks);

  if (n_threads <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b)
      fn(b, b * block_size, std::min(count, (b + 1) * block_size));
    return;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      fn(b, b * block_size, std::min(count, (b + 1) * block_size));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads - 1);
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace levymult
