#pragma once

#include <cstddef>
#include <functional>

namespace paraairy {

/// Global worker-count knob. 1 disables threading entirely. Results are
/// bit-identical for any value: tasks write to disjoint slots and every
/// reduction happens afterwards in index order.
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [0, count). Blocks until all tasks complete.
/// fn must only touch state owned by index i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace paraairy
