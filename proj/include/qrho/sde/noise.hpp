#pragma once

#include <qrho/errors.hpp>

#include <Eigen/Core>
#include <cstdint>

namespace qrho::sde {

// White-noise generator spec.  Increments over a step dt are Gaussian with
// mean 0 and variance 2 * epsilon * dt.  Generation is counter-based and
// keyed by (seed, stream_id, step index), so any increment can be produced
// independently of ordering or thread layout.
struct NoiseSpec {
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    void validate() const {
        if (!(epsilon >= 0.0)) throw DomainError("NoiseSpec: epsilon must be >= 0");
    }
};

namespace detail {

// Philox-style 2x64 counter hash: counter = (step, stream), key = seed.
// Returns two decorrelated 64-bit words.
struct TwoWords {
    std::uint64_t a, b;
};
TwoWords philox2x64(std::uint64_t step, std::uint64_t stream, std::uint64_t seed);

// Standard normal deviate for the given counter triple.
double standard_normal(std::uint64_t step, std::uint64_t stream, std::uint64_t seed);

// Sequential helper producing the same values as standard_normal(k, ...)
// while reusing the Box-Muller pair shared by steps (2j, 2j+1).
struct NormalStream {
    std::uint64_t stream = 0;
    std::uint64_t seed = 0;
    std::uint64_t cached_pair = ~0ull;
    double z[2] = {0.0, 0.0};

    double operator()(std::uint64_t step);
};

}  // namespace detail

// One noise increment for step k: N(0, 2 epsilon dt).
inline double noise_increment(const NoiseSpec& spec, double dt, std::uint64_t k) {
    if (spec.epsilon == 0.0) return 0.0;
    return detail::standard_normal(k, spec.stream_id, spec.seed) *
           std::sqrt(2.0 * spec.epsilon * dt);
}

// The first `count` increments of the stream.
Eigen::ArrayXd noise_increments(const NoiseSpec& spec, double dt, Eigen::Index count);

}  // namespace qrho::sde
