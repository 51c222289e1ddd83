#include "rifo/dpapprox/admission.hpp"

#include <stdexcept>
#include <string>

namespace rifo::dpapprox {

std::string_view to_string(Arithmetic a) noexcept {
    return a == Arithmetic::ExactCrossMul ? "exact" : "shift";
}

Arithmetic parse_arithmetic(std::string_view name) {
    if (name == "exact" || name == "crossmul") return Arithmetic::ExactCrossMul;
    if (name == "shift") return Arithmetic::ShiftApprox;
    throw std::invalid_argument("unknown approximation mode '" + std::string(name) + "' (expected exact|shift)");
}

std::uint32_t guaranteed_capacity(std::uint32_t capacity, Ratio k) {
    if (k < Ratio(0, 1) || k >= Ratio(1, 1)) throw std::invalid_argument("guaranteed_capacity: k must be in [0, 1)");
    const __int128 num = static_cast<__int128>(k.den() - k.num()) * capacity;
    const __int128 den = k.den();
    const auto rounded = static_cast<std::uint32_t>((2 * num + den) / (2 * den));
    return rounded == 0 ? 1 : rounded;
}

DataplaneParams make_dataplane_params(std::uint32_t capacity, Ratio k, bool scale_by_guaranteed_buffer) {
    if (capacity == 0) throw std::invalid_argument("make_dataplane_params: capacity must be >= 1");
    return {capacity, scale_by_guaranteed_buffer ? guaranteed_capacity(capacity, k) : capacity};
}

ScoreRule make_score_rule(ApproxMode mode, std::uint32_t capacity, Ratio k) {
    const DataplaneParams params = make_dataplane_params(capacity, k, mode.scale_by_guaranteed_buffer);
    return [mode, params](const ScoreInputs& in) {
        return admit(mode, in.min, in.max, in.rank, in.queue.occupancy, params);
    };
}

}  // namespace rifo::dpapprox
