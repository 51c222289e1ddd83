#pragma once

#include "rifo/core/ratio.hpp"
#include "rifo/core/types.hpp"
#include "rifo/schedulers/rifo.hpp"

#include <cstdint>
#include <string_view>

namespace rifo::dpapprox {

// Division-free forms of the score condition
//
//     (max - rank) / (max - min)  >=  (B - l) / B
//
// as a switch pipeline would evaluate them. Cross-multiplying gives
//
//     (max - rank) * M  >=  (max - min) * (B - l)
//
// where the left multiplier M is B (exact) or the guaranteed-buffer capacity
// (1 - k) * B. The shift variant additionally rounds M and B - l to powers of
// two so both products become left shifts.
//
// Everything in integer_admission.cpp is integer-only; the lint_integer_only
// test rejects floating point types and division there.

enum class Arithmetic : std::uint8_t { ExactCrossMul, ShiftApprox };

struct ApproxMode {
    Arithmetic arithmetic = Arithmetic::ExactCrossMul;
    bool scale_by_guaranteed_buffer = false;
};

std::string_view to_string(Arithmetic a) noexcept;
Arithmetic parse_arithmetic(std::string_view name);

/// Control-plane constants, computed once per queue configuration.
struct DataplaneParams {
    std::uint32_t capacity = 1;          // B
    std::uint32_t left_multiplier = 1;   // B, or round((1 - k) * B) when scaled
};

/// round((1 - k) * B), halves rounding up, never below 1.
std::uint32_t guaranteed_capacity(std::uint32_t capacity, Ratio k);

DataplaneParams make_dataplane_params(std::uint32_t capacity, Ratio k, bool scale_by_guaranteed_buffer);

/// Exponent of the power of two nearest to x (x > 0); ties go to the larger power.
unsigned nearest_pow2_exponent(std::uint64_t x) noexcept;

/// Exact cross-multiplied score condition with 64-bit products.
bool admit_crossmul(Rank min, Rank max, Rank rank, std::uint32_t occupancy, const DataplaneParams& p) noexcept;

/// Cross-multiplied score condition with both multipliers rounded to powers
/// of two and applied as left shifts.
bool admit_shift(Rank min, Rank max, Rank rank, std::uint32_t occupancy, const DataplaneParams& p) noexcept;

bool admit(ApproxMode mode, Rank min, Rank max, Rank rank, std::uint32_t occupancy,
           const DataplaneParams& p) noexcept;

/// Score rule for RifoScheduler backed by the integer arithmetic above.
ScoreRule make_score_rule(ApproxMode mode, std::uint32_t capacity, Ratio k);

}  // namespace rifo::dpapprox
