#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace fluxvar {

/// Welford accumulator; merge() uses the Chan et al. pairwise update so a
/// fixed merge order gives bit-identical results.
struct RunningMoments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) noexcept {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const RunningMoments& o) noexcept {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double n = static_cast<double>(count + o.count);
        const double delta = o.mean - mean;
        mean += delta * static_cast<double>(o.count) / n;
        m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
        count += o.count;
    }

    /// Sample variance (n - 1 denominator).
    double variance() const noexcept {
        return count > 1 ? m2 / static_cast<double>(count - 1) : std::numeric_limits<double>::quiet_NaN();
    }
};

/// sqrt(var)/|mean|, NaN when the mean is zero.
inline double coefficient_of_variation(double mean, double variance) noexcept {
    return mean != 0.0 ? std::sqrt(variance) / std::abs(mean) : std::numeric_limits<double>::quiet_NaN();
}

/// Standard error of the mean of independent batch values.
inline double batch_standard_error(std::span<const double> values) noexcept {
    const std::size_t b = values.size();
    if (b < 2) return std::numeric_limits<double>::quiet_NaN();
    RunningMoments m;
    for (double v : values) m.push(v);
    return std::sqrt(m.variance() / static_cast<double>(b));
}

/// Means of `batches` contiguous, near-equal blocks of a series.
std::vector<double> batch_means(std::span<const double> series, std::size_t batches);

}  // namespace fluxvar
