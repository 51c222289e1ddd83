// Decision path only. Integer arithmetic, no division, no floating point.

#include "rifo/dpapprox/admission.hpp"

#include <bit>
#include <cassert>

namespace rifo::dpapprox {

unsigned nearest_pow2_exponent(std::uint64_t x) noexcept {
    assert(x > 0);
    const unsigned e = 63U - static_cast<unsigned>(std::countl_zero(x));
    const std::uint64_t lower = std::uint64_t{1} << e;
    // x is at least as close to 2^(e+1) as to 2^e  <=>  2x >= 3 * 2^e
    const unsigned __int128 twice = static_cast<unsigned __int128>(x) << 1;
    const unsigned __int128 pivot = static_cast<unsigned __int128>(lower) * 3U;
    return twice >= pivot ? e + 1 : e;
}

namespace {

// (max - rank) with ranks above max scoring 0, matching the clamped score.
std::uint64_t rank_gap(Rank max, Rank rank) noexcept {
    return rank >= max ? 0 : static_cast<std::uint64_t>(max) - rank;
}

}  // namespace

bool admit_crossmul(Rank min, Rank max, Rank rank, std::uint32_t occupancy, const DataplaneParams& p) noexcept {
    assert(min < max);
    assert(occupancy <= p.capacity);
    const std::uint64_t gap = rank_gap(max, rank);
    const std::uint64_t span = static_cast<std::uint64_t>(max) - min;
    const std::uint64_t free_slots = static_cast<std::uint64_t>(p.capacity) - occupancy;
    // Operands are below 2^32, so both products fit in 64 bits.
    return gap * p.left_multiplier >= span * free_slots;
}

bool admit_shift(Rank min, Rank max, Rank rank, std::uint32_t occupancy, const DataplaneParams& p) noexcept {
    assert(min < max);
    assert(occupancy <= p.capacity);
    const std::uint32_t free_slots = p.capacity - occupancy;
    if (free_slots == 0) return true;
    if (p.left_multiplier == 0) return false;
    const unsigned left_shift = nearest_pow2_exponent(p.left_multiplier);
    const unsigned right_shift = nearest_pow2_exponent(free_slots);
    // Shifts are at most 32 and operands below 2^32: 128-bit holds the result.
    const unsigned __int128 lhs = static_cast<unsigned __int128>(rank_gap(max, rank)) << left_shift;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(static_cast<std::uint64_t>(max) - min) << right_shift;
    return lhs >= rhs;
}

bool admit(ApproxMode mode, Rank min, Rank max, Rank rank, std::uint32_t occupancy,
           const DataplaneParams& p) noexcept {
    switch (mode.arithmetic) {
    case Arithmetic::ExactCrossMul: return admit_crossmul(min, max, rank, occupancy, p);
    case Arithmetic::ShiftApprox: return admit_shift(min, max, rank, occupancy, p);
    }
    return false;
}

}  // namespace rifo::dpapprox
