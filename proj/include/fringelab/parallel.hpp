#pragma once

#include <cstddef>
#include <functional>

namespace fringelab {

/// Worker count for grid evaluation: FRINGELAB_THREADS when set to a positive
/// integer, otherwise the hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count). Each index is visited exactly once; the
/// caller must write results into per-index slots so the outcome does not
/// depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fringelab
