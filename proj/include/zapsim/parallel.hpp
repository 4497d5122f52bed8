#ifndef ZAPSIM_PARALLEL_HPP
#define ZAPSIM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace zapsim
{

// Worker count from ZAPSIM_THREADS, else hardware concurrency (at least 1).
unsigned worker_count();

// Runs body(i) for i in [0, count). Each index is evaluated exactly once;
// callers write into preallocated slots so results never depend on the
// number of workers. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace zapsim

#endif // ZAPSIM_PARALLEL_HPP
