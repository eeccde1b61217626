#pragma once

#include <cstddef>
#include <functional>

namespace frachjb {

/// Worker count for fan-out work: the value set by set_worker_count, else
/// FRAC_HJB_THREADS, else 1.
std::size_t worker_count();

/// Overrides the environment; 0 restores the environment default.
void set_worker_count(std::size_t count);

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Each
/// index runs exactly once; callers write results by index so the outcome
/// does not depend on scheduling. The exception of the lowest failing index
/// is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace frachjb
