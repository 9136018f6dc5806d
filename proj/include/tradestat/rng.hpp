#ifndef TRADESTAT_RNG_HPP
#define TRADESTAT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace tradestat {

// Deterministic, platform-independent random engine: xoshiro256++ with
// splitmix64 state expansion (the seeding scheme recommended by the xoshiro
// authors, see https://prng.di.unimi.it). We own the generator and every
// variate transform so a given seed produces identical streams on every
// platform; std::mt19937 would be portable but the std distributions are not.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : state_)
            word = sm.next();
    }

    // Independent substream derived from (seed, stream_index); used to
    // partition big sample runs into order-independent chunks.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_index) {
        SplitMix64 sm(seed);
        std::uint64_t base = sm.next();
        return Rng(base ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1)));
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t v, int k) {
            return (v << k) | (v >> (64 - k));
        };
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Standard normal via Box-Muller. Consumes exactly two uniforms per call
    // (the second output of the pair is discarded to keep the stream state a
    // pure function of the call count).
    double normal() {
        const double u1 = 1.0 - next_double(); // (0, 1], keeps log finite
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return r * std::cos(2.0 * M_PI * u2);
    }

private:
    std::uint64_t state_[4];
};

// Variate transforms used by the simulation and by test-data generation.

inline double sample_exponential(Rng& rng, double rate) {
    if (!(rate > 0.0))
        throw std::invalid_argument("sample_exponential: rate must be > 0");
    return -std::log(1.0 - rng.next_double()) / rate;
}

inline double sample_lognormal(Rng& rng, double mu, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("sample_lognormal: sigma must be > 0");
    return std::exp(mu + sigma * rng.normal());
}

inline double sample_weibull(Rng& rng, double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("sample_weibull: shape and scale must be > 0");
    const double u = 1.0 - rng.next_double();
    return scale * std::pow(-std::log(u), 1.0 / shape);
}

// Pareto with density alpha beta^alpha / x^(alpha+1) on [beta, inf).
inline double sample_pareto(Rng& rng, double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("sample_pareto: alpha and beta must be > 0");
    const double u = 1.0 - rng.next_double();
    return beta * std::pow(u, -1.0 / alpha);
}

// Gamma with given shape and *rate* via the Marsaglia-Tsang squeeze method,
// boosted for shape < 1 (sample shape+1 and multiply by U^(1/shape)).
inline double sample_gamma(Rng& rng, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("sample_gamma: shape and rate must be > 0");
    double boost = 1.0;
    double a = shape;
    if (a < 1.0) {
        const double u = 1.0 - rng.next_double();
        boost = std::pow(u, 1.0 / a);
        a += 1.0;
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = rng.normal();
        const double t = 1.0 + c * x;
        if (t <= 0.0)
            continue;
        const double v = t * t * t;
        const double u = rng.next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return boost * d * v / rate;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return boost * d * v / rate;
    }
}

} // namespace tradestat

#endif
