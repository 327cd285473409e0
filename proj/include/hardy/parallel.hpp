#pragma once

#include <cstddef>
#include <functional>

namespace hardy {

/// Worker count: hardware concurrency, capped by the HARDY_THREADS env var.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write results into slot i so the output never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hardy
