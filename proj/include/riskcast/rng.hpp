#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace riskcast {

// SplitMix64 (Steele, Lea & Flood 2014). Used to derive independent
// per-replication seeds from (seed, replication index) so fan-out order
// cannot affect results.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 1));
}

// Deterministic draw stream on top of std::mt19937_64. The engine's output
// sequence is pinned by the C++ standard; the transforms below are written
// out explicitly because the std::*_distribution mappings are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1], safe as a log argument.
    double uniform_positive() { return 1.0 - uniform(); }

    // Standard normal via Box-Muller; one draw per call, pair cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform_positive();
        const double v = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u));
        const double angle = 2.0 * kPi * v;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    // Unit-rate exponential by inversion.
    double exponential() { return -std::log(uniform_positive()); }

    // Student t with df > 0 via Bailey's polar method (Bailey 1994):
    // T = sqrt(df * (U^(-2/df) - 1)) * cos(2 pi V). Closed form, no rejection.
    double student_t(double df) {
        const double u = uniform_positive();
        const double v = uniform();
        return std::sqrt(df * (std::pow(u, -2.0 / df) - 1.0)) * std::cos(2.0 * kPi * v);
    }

private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace riskcast
