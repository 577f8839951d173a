#pragma once

#include <cstddef>
#include <functional>

namespace ctopo {

// COSET_TOPO_THREADS if set and positive, else the hardware count (at least 1).
unsigned default_threads();

// Calls fn(i) for i in [0, n), split into contiguous blocks over `threads`
// workers. fn must only write state owned by index i. The first exception
// thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace ctopo
