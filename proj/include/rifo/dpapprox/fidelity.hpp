#pragma once

#include "rifo/core/rng.hpp"
#include "rifo/dpapprox/admission.hpp"

#include <cstdint>

namespace rifo::dpapprox {

/// Where fidelity_report draws its random queue/range states from.
struct FidelityDomain {
    Rank rank_limit = 1U << 16;   // ranks uniform on [0, rank_limit]
    std::uint32_t capacity = 20;  // B
    Ratio k{1, 10};               // only used when the mode scales by (1 - k) * B
    bool powers_of_two_only = false;  // B and B - l restricted to powers of two, B <= capacity
};

struct FidelityReport {
    ApproxMode mode;
    std::uint64_t trials = 0;
    std::uint64_t agreements = 0;
    std::uint64_t false_admit = 0;  // mode admits, exact rational rule drops
    std::uint64_t false_drop = 0;   // mode drops, exact rational rule admits

    double agreement() const noexcept {
        return trials == 0 ? 0.0 : static_cast<double>(agreements) / static_cast<double>(trials);
    }
};

/// Compares the mode's decision with the exact rational score condition on
/// `trials` random states with min < max and 0 <= l < B.
FidelityReport fidelity_report(ApproxMode mode, std::uint64_t trials, Rng& rng, const FidelityDomain& domain = {});

}  // namespace rifo::dpapprox
