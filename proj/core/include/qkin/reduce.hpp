#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qkin {

/// Kahan compensated accumulator; summation order is part of the
/// contract wherever reproducibility matters.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// Runs body(i) for i in [0,n) on up to `threads` workers using a static
/// block partition. Results must be written to disjoint slots so the
/// outcome is independent of scheduling.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body)
{
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nthreads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Deterministic parallel sum: each index produces term(i), partials are
/// stored per index and reduced in index order with compensation, so the
/// result is bit-identical for any thread count.
inline double parallel_sum_ordered(std::size_t n, int threads,
                                   const std::function<double(std::size_t)>& term)
{
    std::vector<double> slots(n);
    parallel_for(n, threads, [&](std::size_t i) { slots[i] = term(i); });
    KahanSum acc;
    for (double v : slots) acc.add(v);
    return acc.value();
}

} // namespace qkin
