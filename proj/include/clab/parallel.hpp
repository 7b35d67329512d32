#pragma once

#include <cstddef>
#include <functional>

namespace clab {

/**
 * Worker cap from CONCAVITY_LAB_THREADS (default: hardware concurrency,
 * at most 8). Read once per process.
 */
int worker_count();

/**
 * Runs fn(0..n-1), fanning out over workers when more than one is allowed.
 * Each index writes only its own slot, so results are independent of the
 * worker count and of scheduling.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

} // namespace clab
