#pragma once

#include <cstdint>
#include <random>

namespace rifo {

/// Seeded generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence the C++ standard pins
/// down exactly. The standard distributions are not pinned down, so every
/// variate here is derived from raw engine words by fixed formulas.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_closed() { return 1.0 - uniform01(); }

    /// Uniform integer on [lo, hi], unbiased by rejection.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

    /// Exponential variate with the given rate (mean 1 / rate).
    double exponential(double rate);

    /// Independent child stream, e.g. one per host.
    Rng split(std::uint64_t stream);

private:
    std::mt19937_64 engine_;
};

}  // namespace rifo
