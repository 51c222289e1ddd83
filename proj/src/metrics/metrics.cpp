#include "rifo/metrics/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace rifo {

FlowClass classify(std::uint64_t size_bytes) noexcept {
    if (size_bytes < kSmallFlowLimit) return FlowClass::Small;
    if (size_bytes >= kLargeFlowLimit) return FlowClass::Large;
    return FlowClass::Medium;
}

bool in_class(std::uint64_t size_bytes, FlowClass c) noexcept {
    return c == FlowClass::All || classify(size_bytes) == c;
}

std::string_view to_string(FlowClass c) noexcept {
    switch (c) {
    case FlowClass::Small: return "small";
    case FlowClass::Medium: return "medium";
    case FlowClass::Large: return "large";
    case FlowClass::All: return "all";
    }
    return "unknown";
}

FlowClass parse_flow_class(std::string_view name) {
    if (name == "small") return FlowClass::Small;
    if (name == "medium") return FlowClass::Medium;
    if (name == "large") return FlowClass::Large;
    if (name == "all") return FlowClass::All;
    throw std::invalid_argument("unknown flow class '" + std::string(name) + "' (expected small|medium|large|all)");
}

SimTime nearest_rank_percentile(std::span<const SimTime> values, unsigned pct) {
    if (values.empty()) throw std::invalid_argument("percentile of empty sample");
    if (pct == 0 || pct > 100) throw std::invalid_argument("percentile must be in (0, 100]");
    std::vector<SimTime> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::uint64_t n = sorted.size();
    const std::uint64_t rank = (pct * n + 99) / 100;  // ceil(pct / 100 * n)
    return sorted[std::max<std::uint64_t>(rank, 1) - 1];
}

FctStats fct_stats(std::span<const FlowRecord> flows, FlowClass c) {
    std::vector<SimTime> fcts;
    for (const auto& f : flows) {
        if (f.completion_time && in_class(f.size_bytes, c)) fcts.push_back(*f.fct());
    }
    FctStats s;
    s.count = fcts.size();
    if (fcts.empty()) return s;
    long double sum = 0;
    for (const auto v : fcts) sum += static_cast<long double>(v);
    s.mean_ns = static_cast<double>(sum / static_cast<long double>(fcts.size()));
    s.p99_ns = nearest_rank_percentile(fcts, 99);
    return s;
}

std::optional<double> throughput_bps(std::span<const FlowRecord> flows) {
    long double bytes = 0;
    long double seconds = 0;
    bool any = false;
    for (const auto& f : flows) {
        if (!f.completion_time) continue;
        any = true;
        bytes += static_cast<long double>(f.size_bytes);
        seconds += static_cast<long double>(*f.fct()) * 1e-9L;
    }
    if (!any || seconds <= 0) return std::nullopt;
    return static_cast<double>(8.0L * bytes / seconds);
}

std::optional<double> large_flow_throughput(std::span<const FlowRecord> flows) {
    std::vector<FlowRecord> large;
    for (const auto& f : flows) {
        if (classify(f.size_bytes) == FlowClass::Large) large.push_back(f);
    }
    return throughput_bps(large);
}

std::uint64_t unfinished_count(std::span<const FlowRecord> flows) noexcept {
    return static_cast<std::uint64_t>(
        std::count_if(flows.begin(), flows.end(), [](const FlowRecord& f) { return !f.completion_time; }));
}

}  // namespace rifo
