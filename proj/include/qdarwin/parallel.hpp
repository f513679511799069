#pragma once

#include <cstddef>
#include <functional>

namespace qdarwin {

/// Machine parallelism, at least 1.
unsigned default_workers();

/// Runs fn(i) for i in [0, n) on up to `workers` threads (0 = machine
/// parallelism). Tasks must be independent; callers get determinism by
/// having each task write only to its own slot and reducing afterwards
/// in index order.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace qdarwin
