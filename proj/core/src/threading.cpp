#include "stafields/threading.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace stf {

namespace {

std::atomic<int> g_thread_count{0};

int auto_thread_count() {
  if (const char* env = std::getenv("STA_FIELDS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

int thread_count() {
  const int n = g_thread_count.load(std::memory_order_relaxed);
  return n > 0 ? n : auto_thread_count();
}

void set_thread_count(int n) {
  g_thread_count.store(n > 0 ? n : 0, std::memory_order_relaxed);
}

void parallel_for_blocks(
    std::size_t n,
    const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t blocks = (n + kParallelBlock - 1) / kParallelBlock;
  const int workers =
      static_cast<int>(std::min<std::size_t>(
          static_cast<std::size_t>(thread_count()), blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b)
      body(b * kParallelBlock, std::min(n, (b + 1) * kParallelBlock));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= blocks) return;
      body(b * kParallelBlock, std::min(n, (b + 1) * kParallelBlock));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

double parallel_sum(std::size_t n,
                    const std::function<double(std::size_t)>& term) {
  if (n == 0) return 0.0;
  const std::size_t blocks = (n + kParallelBlock - 1) / kParallelBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_for_blocks(n, [&](std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    partial[begin / kParallelBlock] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;  // fixed block order
  return total;
}

}  // namespace stf
