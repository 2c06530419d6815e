#pragma once

#include <array>
#include <cstdint>

namespace fluxvar {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., Random123). Pure function of
/// (counter, key).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Independent sub-streams of one path.
enum class StreamDomain : std::uint32_t { Input = 0, OuInit = 1 };

/// Standard normal variates indexed by (master_seed, path_index, domain, index).
/// Two variates come out of each Philox block; the last block is cached, so an
/// instance must not be shared between threads.
class NoiseStream {
public:
    NoiseStream(std::uint64_t master_seed, std::uint64_t path_index, double dt,
                StreamDomain domain = StreamDomain::Input, unsigned refinement = 0);

    std::uint64_t master_seed() const noexcept { return seed_; }
    std::uint64_t path_index() const noexcept { return path_; }
    double dt() const noexcept { return dt_; }

    /// Z_index ~ N(0, 1).
    double normal(std::uint64_t index);

    /// Brownian increment over step `step` of length dt. With refinement r the
    /// increment is the sum of 2^r fine increments of length dt / 2^r, so runs
    /// at dt and dt/2 see the same Brownian path.
    double increment(std::uint64_t step);

private:
    std::uint64_t seed_;
    std::uint64_t path_;
    double dt_;
    std::uint32_t domain_;
    unsigned refinement_;
    double fine_sqrt_dt_;
    std::uint64_t cached_block_ = ~std::uint64_t{0};
    std::array<double, 2> cache_{};
};

}  // namespace fluxvar
