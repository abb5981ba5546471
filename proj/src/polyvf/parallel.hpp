#pragma once
#include <cstddef>
#include <functional>

namespace polyvf {

// Worker cap: POLYVF_THREADS if set and positive, else hardware concurrency.
int default_threads();

// Runs f(0..n-1) on up to `threads` workers (0 = default). The first exception by index is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);

}  // namespace polyvf
