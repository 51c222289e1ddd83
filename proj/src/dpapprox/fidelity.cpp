#include "rifo/dpapprox/fidelity.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace rifo::dpapprox {

FidelityReport fidelity_report(ApproxMode mode, std::uint64_t trials, Rng& rng, const FidelityDomain& domain) {
    if (trials == 0) throw std::invalid_argument("fidelity_report: trials must be >= 1");
    if (domain.capacity == 0) throw std::invalid_argument("fidelity_report: capacity must be >= 1");
    if (domain.rank_limit == 0) throw std::invalid_argument("fidelity_report: rank_limit must be >= 1");

    FidelityReport report{mode};
    report.trials = trials;

    const unsigned max_exp = static_cast<unsigned>(std::bit_width(domain.capacity)) - 1;

    for (std::uint64_t t = 0; t < trials; ++t) {
        Rank a = 0;
        Rank b = 0;
        do {
            a = static_cast<Rank>(rng.uniform_int(0, domain.rank_limit));
            b = static_cast<Rank>(rng.uniform_int(0, domain.rank_limit));
        } while (a == b);
        const Rank min = std::min(a, b);
        const Rank max = std::max(a, b);
        const auto rank = static_cast<Rank>(rng.uniform_int(min, max));

        std::uint32_t capacity = domain.capacity;
        std::uint32_t occupancy = 0;
        if (domain.powers_of_two_only) {
            const auto cap_exp = static_cast<unsigned>(rng.uniform_int(0, max_exp));
            const auto free_exp = static_cast<unsigned>(rng.uniform_int(0, cap_exp));
            capacity = 1U << cap_exp;
            occupancy = capacity - (1U << free_exp);
        } else {
            occupancy = static_cast<std::uint32_t>(rng.uniform_int(0, capacity - 1));
        }

        const QueueState q{capacity, occupancy};
        const bool reference = rational_score_rule(ScoreInputs{min, max, rank, q});
        const auto params = make_dataplane_params(capacity, domain.k, mode.scale_by_guaranteed_buffer);
        const bool approx = admit(mode, min, max, rank, occupancy, params);

        if (approx == reference) {
            ++report.agreements;
        } else if (approx) {
            ++report.false_admit;
        } else {
            ++report.false_drop;
        }
    }
    return report;
}

}  // namespace rifo::dpapprox
