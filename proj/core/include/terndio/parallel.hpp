#pragma once

#include <cstddef>
#include <functional>

namespace terndio {

/// Worker count used when the caller passes 0.
unsigned default_workers();

/// Runs body(i) for i in [0, n) on up to `workers` threads. Callers write
/// results to slot i and reduce afterwards in index order, which keeps output
/// independent of the worker count. The first exception is rethrown here.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace terndio
