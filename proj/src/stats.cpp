#include "fluxvar/stats.hpp"

namespace fluxvar {

std::vector<double> batch_means(std::span<const double> series, std::size_t batches) {
    std::vector<double> out;
    if (batches == 0 || series.size() < batches) return out;
    out.reserve(batches);
    const std::size_t n = series.size();
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t lo = b * n / batches;
        const std::size_t hi = (b + 1) * n / batches;
        double sum = 0.0;
        for (std::size_t i = lo; i < hi; ++i) sum += series[i];
        out.push_back(sum / static_cast<double>(hi - lo));
    }
    return out;
}

}  // namespace fluxvar
