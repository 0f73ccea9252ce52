#pragma once

// Deterministic data-parallel helpers.  Work is cut into fixed-size blocks
// (independent of the thread count) which threads claim from an atomic
// counter; reductions combine per-block partial results sequentially in
// block order.  Outputs are therefore bit-identical for any thread count,
// including 1.

#include <cstddef>
#include <functional>

namespace stf {

// Effective worker count: explicit set_thread_count() wins, then the
// STA_FIELDS_THREADS environment variable, then hardware concurrency.
int thread_count();
void set_thread_count(int n);  // n <= 0 restores automatic selection

inline constexpr std::size_t kParallelBlock = 8192;

// Invokes body(begin, end) over disjoint blocks covering [0, n).
void parallel_for_blocks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>&
                             body);

// Deterministic parallel sum of term(i) for i in [0, n): per-block partial
// sums are accumulated in block order.
double parallel_sum(std::size_t n,
                    const std::function<double(std::size_t)>& term);

}  // namespace stf
