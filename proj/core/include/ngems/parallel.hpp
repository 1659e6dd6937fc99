#pragma once

#include <cstddef>
#include <functional>

namespace ngems {

// Run fn(i) for i in [0, n) on up to `threads` workers. Work is split into
// contiguous index blocks; fn must write only to slot i so results are
// identical whatever the thread count. threads <= 1 runs inline. The first
// exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace ngems
