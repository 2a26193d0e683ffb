#pragma once

#include <cstddef>
#include <functional>

namespace qidlab {

// Runs body(0..count-1) over settings().threads workers with a static block
// partition.  Callers write results into preallocated per-index slots and
// reduce sequentially afterwards, so the outcome is bit-identical for every
// thread count.  The first exception thrown by the lowest-indexed worker is
// rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qidlab
