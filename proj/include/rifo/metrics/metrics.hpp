#pragma once

#include "rifo/workload/workload.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace rifo {

enum class FlowClass : std::uint8_t { Small, Medium, Large, All };

inline constexpr std::uint64_t kSmallFlowLimit = 100'000;    // small: < 100 KB
inline constexpr std::uint64_t kLargeFlowLimit = 1'000'000;  // large: >= 1 MB

/// Small, Medium or Large; never All.
FlowClass classify(std::uint64_t size_bytes) noexcept;
bool in_class(std::uint64_t size_bytes, FlowClass c) noexcept;

std::string_view to_string(FlowClass c) noexcept;
FlowClass parse_flow_class(std::string_view name);

struct FctStats {
    std::uint64_t count = 0;
    std::optional<double> mean_ns;       // absent when count == 0
    std::optional<SimTime> p99_ns;       // nearest-rank
};

/// Nearest-rank percentile (0 < pct <= 100) of an unsorted sample.
SimTime nearest_rank_percentile(std::span<const SimTime> values, unsigned pct);

/// FCT statistics over the completed flows of one class; unfinished flows are skipped.
FctStats fct_stats(std::span<const FlowRecord> flows, FlowClass c);

/// 8 * sum(bytes) / sum(FCT seconds) over completed flows of the Large class.
std::optional<double> large_flow_throughput(std::span<const FlowRecord> flows);

/// Same ratio over whatever completed flows are passed in.
std::optional<double> throughput_bps(std::span<const FlowRecord> flows);

std::uint64_t unfinished_count(std::span<const FlowRecord> flows) noexcept;

}  // namespace rifo
