#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "fwt/fading.hpp"

namespace fwt {

/// Running mean/variance accumulator (Welford), mergeable in a fixed order.
struct Moments {
    std::size_t n = 0;
    double mean   = 0.0;
    double m2     = 0.0;

    void add(double x)
    {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o);

    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_mean() const { return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }
};

/// Number of samples handled by one random sub-stream. Fixed so that the
/// partition, and therefore every result, is independent of worker count.
inline constexpr std::size_t kChunkSize = 4096;

/// Worker count from the FWT_WORKERS environment variable; defaults to the
/// hardware concurrency, minimum 1.
unsigned worker_count();

/// Runs `body(chunk_index, begin, end)` over [0, n) split into kChunkSize
/// chunks, spreading chunks over worker_count() threads. The body must only
/// write to per-chunk state.
void for_each_chunk(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Random stream for chunk `chunk` of a run seeded with `seed`.
inline Rng chunk_rng(std::uint64_t seed, std::size_t chunk)
{
    return Rng(split_seed(seed, chunk));
}

}  // namespace fwt
