#pragma once

#include <cstddef>
#include <functional>

namespace worldfunc {

/// Upper bound on worker threads used by the kernel. 0 restores the default
/// (hardware concurrency).
void set_thread_cap(unsigned cap) noexcept;
unsigned thread_count() noexcept;

/// Runs fn(i) for i in [0, n) on up to thread_count() threads. Each index is
/// visited exactly once; callers write results into per-index slots so the
/// outcome does not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace worldfunc
