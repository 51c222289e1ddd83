#pragma once

#include "rifo/core/ratio.hpp"
#include "rifo/core/scheduler.hpp"
#include "rifo/dpapprox/admission.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace rifo::netsim {

enum class SchedulerKind : std::uint8_t { Rifo, Aifo, SpPifo, Pifo, DropTail };

std::string_view to_string(SchedulerKind k) noexcept;
SchedulerKind parse_scheduler(std::string_view name);

struct SchedulerConfig {
    SchedulerKind kind = SchedulerKind::Rifo;
    std::uint32_t capacity = 20;        // B, packets
    std::uint32_t tracking_range = 50;  // T (rifo)
    Ratio guaranteed_fraction{1, 10};   // k (rifo, aifo)
    std::uint32_t window = 50;          // W (aifo)
    std::uint32_t queue_count = 8;      // sppifo; each queue holds ceil(B / n)
    /// Integer data-plane arithmetic for RIFO's score test; unset means exact rationals.
    std::optional<dpapprox::ApproxMode> arithmetic;

    void validate() const;
    /// Compact "B=20;T=50;k=1/10" style description of the parameters in use.
    std::string params_key() const;
};

std::unique_ptr<Scheduler> make_scheduler(const SchedulerConfig& config);

}  // namespace rifo::netsim
