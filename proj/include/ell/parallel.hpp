#pragma once

#include <cstddef>
#include <functional>

namespace ell {

/// Worker count used by parallel_for. Defaults to 1.
void set_thread_count(int k);
int thread_count();

/// Runs fn(i) for i in [0, n); workers pull indices from a shared counter and
/// nested calls run inline. Callers write results per index and reduce
/// afterwards in index order, which keeps output independent of the worker
/// count. The exception from the lowest failing
/// index is rethrown; all indices still run.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ell
