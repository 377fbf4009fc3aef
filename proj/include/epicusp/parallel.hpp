#pragma once

#include <cstddef>
#include <functional>

namespace epicusp {

/// Worker count for internal grid scans: hardware concurrency, capped by the
/// EPICUSP_THREADS environment variable when it holds a positive integer.
unsigned worker_count();

/// Calls body(i) for i in [0, count), split into contiguous blocks across
/// worker_count() threads. body must only write to storage owned by index i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace epicusp
