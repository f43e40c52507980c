#pragma once

#include <cstddef>
#include <functional>

namespace besselstop {

/// Worker cap: BESSELSTOP_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// body(begin, end) on each. Runs inline when one worker suffices.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace besselstop
