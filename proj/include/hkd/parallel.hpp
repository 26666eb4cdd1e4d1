#pragma once

#include <cstddef>
#include <functional>

namespace hkd {

/// Worker count: HKD_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t max_threads();

/// Calls body(i) for i in [0, count) on up to max_threads() threads. body must
/// not touch shared mutable state. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hkd
