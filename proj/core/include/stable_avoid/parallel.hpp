#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace stable_avoid {

/// Resolve a worker count: n > 0 as given, otherwise STABLE_AVOID_WORKERS
/// from the environment, otherwise hardware concurrency.
int resolve_workers(int requested);

/// Deterministic parallel accumulation.
///
/// Calls fn(i, acc) for i in [0, n) where acc is a dim-sized slot the call
/// adds into. Work is split into fixed blocks whose partial sums are
/// combined in block order, so the result is bit-identical for any worker
/// count (the spec's reduction contract for Monte Carlo estimators).
void parallel_accumulate(std::int64_t n, int workers, std::size_t dim,
                         const std::function<void(std::int64_t, std::span<double>)>& fn,
                         std::span<double> out);

}  // namespace stable_avoid
