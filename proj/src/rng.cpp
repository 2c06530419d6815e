#include "fluxvar/rng.hpp"

#include <cmath>
#include <numbers>

#include "fluxvar/error.hpp"

namespace fluxvar {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

// (0, 1], 53 bits
inline double open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

NoiseStream::NoiseStream(std::uint64_t master_seed, std::uint64_t path_index, double dt, StreamDomain domain,
                         unsigned refinement)
    : seed_(master_seed),
      path_(path_index),
      dt_(dt),
      domain_(static_cast<std::uint32_t>(domain)),
      refinement_(refinement),
      fine_sqrt_dt_(std::sqrt(dt / std::ldexp(1.0, static_cast<int>(refinement)))) {
    if (path_index > 0xFFFFFFFFull) throw DomainError("path index exceeds 32 bits");
    if (refinement > 20) throw DomainError("refinement level too large");
}

double NoiseStream::normal(std::uint64_t index) {
    const std::uint64_t block = index >> 1;
    if (block != cached_block_) {
        const PhiloxCounter ctr{static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
                                static_cast<std::uint32_t>(path_), domain_};
        const PhiloxKey key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
        const PhiloxCounter r = philox4x32_10(ctr, key);
        // Box-Muller
        const double u1 = open_unit(r[0], r[1]);
        const double u2 = open_unit(r[2], r[3]);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cache_ = {radius * std::cos(angle), radius * std::sin(angle)};
        cached_block_ = block;
    }
    return cache_[index & 1u];
}

double NoiseStream::increment(std::uint64_t step) {
    if (refinement_ == 0) return fine_sqrt_dt_ * normal(step);
    const std::uint64_t n = std::uint64_t{1} << refinement_;
    double sum = 0.0;
    for (std::uint64_t m = 0; m < n; ++m) sum += normal(step * n + m);
    return fine_sqrt_dt_ * sum;
}

}  // namespace fluxvar
