#include "stable_avoid/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace stable_avoid {

namespace {
constexpr std::int64_t kBlock = 1024;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("STABLE_AVOID_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_accumulate(std::int64_t n, int workers, std::size_t dim,
                         const std::function<void(std::int64_t, std::span<double>)>& fn,
                         std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    if (n <= 0) return;

    const std::int64_t n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(static_cast<std::size_t>(n_blocks) * dim, 0.0);

    const int nw = std::min<std::int64_t>(resolve_workers(workers), n_blocks);
    auto run_block = [&](std::int64_t b) {
        std::span<double> acc(partial.data() + static_cast<std::size_t>(b) * dim, dim);
        const std::int64_t lo = b * kBlock;
        const std::int64_t hi = std::min(n, lo + kBlock);
        for (std::int64_t i = lo; i < hi; ++i) fn(i, acc);
    };

    if (nw <= 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::int64_t b = next.fetch_add(1, std::memory_order_relaxed);
                    if (b >= n_blocks) return;
                    run_block(b);
                }
            });
        for (auto& th : pool) th.join();
    }

    // combine partials in block order: result independent of scheduling
    for (std::int64_t b = 0; b < n_blocks; ++b)
        for (std::size_t k = 0; k < dim; ++k) out[k] += partial[static_cast<std::size_t>(b) * dim + k];
}

}  // namespace stable_avoid
