#pragma once

#include <cstddef>
#include <functional>

namespace oapx {

// Worker count from ORTHO_APPROX_THREADS; 0, unset, or unparsable means one
// worker per hardware thread.
std::size_t worker_count();

// Runs task(0) .. task(count - 1) on up to `workers` threads (0 = worker_count()).
// Tasks must write only to their own slot of any shared output; the first
// exception thrown by a task is rethrown after every worker has stopped.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task,
                  std::size_t workers = 0);

}  // namespace oapx
