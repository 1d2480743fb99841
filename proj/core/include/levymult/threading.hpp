#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace levymult {

/// Worker count: explicit request > LEVYMULT_THREADS env var > hardware.
int effective_threads(int requested = 0);

/// Runs fn(block_index, begin, end) over [0, count) split into fixed-size
/// blocks. Blocks are claimed dynamically, so results must be keyed by block
/// index (not arrival order) for thread-count-independent output.
void parallel_blocks(std::size_t count, std::size_t block_size, int threads,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& fn);

/// Pairwise (cascade) summation; deterministic for a fixed element order.
double pairwise_sum(std::span<const double> values);

}  // namespace levymult
