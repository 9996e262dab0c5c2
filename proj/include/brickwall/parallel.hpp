#pragma once

#include <cstddef>
#include <functional>

namespace brickwall {

// Runs f(0..n-1) on up to `threads` workers; indices are claimed dynamically.
// Callers write results into preallocated per-index slots, so the outcome does
// not depend on scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);

// Keeps a threaded OpenBLAS on one thread so dense results do not depend on
// its scheduling. No effect with other BLAS builds.
void pin_blas_threads();

}  // namespace brickwall
