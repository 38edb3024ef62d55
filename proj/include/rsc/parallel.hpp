#pragma once

#include <cstddef>
#include <functional>

namespace rsc {

// Worker count: hardware concurrency, capped by the RSC_THREADS environment variable.
size_t thread_cap();

// Runs body(i) for i in [0, n) on up to thread_cap() threads. The first
// exception thrown by any call is rethrown after all workers finish.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace rsc
