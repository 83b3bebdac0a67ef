#pragma once

#include <functional>

namespace systolica {

/// Worker count: hardware concurrency, optionally capped by the
/// SYSTOLICA_THREADS environment variable (values < 1 mean 1).
int thread_budget();

/// Runs fn(worker, i) for i in [0, n) on up to `threads` workers (strided
/// assignment; worker in [0, threads)). fn must be safe to call
/// concurrently for distinct i.
void parallel_for(int n, int threads, const std::function<void(int, int)>& fn);

} // namespace systolica
