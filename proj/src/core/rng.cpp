#include "rifo/core/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rifo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::uniform_int: lo > hi");
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) return next_u64();
    const std::uint64_t n = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return lo + x % n;
}

double Rng::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("Rng::exponential: rate must be positive");
    return -std::log(uniform_open_closed()) / rate;
}

Rng Rng::split(std::uint64_t stream) {
    return Rng(splitmix64(next_u64() ^ splitmix64(stream)));
}

}  // namespace rifo
