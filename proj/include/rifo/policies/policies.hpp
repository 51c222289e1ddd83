#pragma once

#include "rifo/core/ratio.hpp"
#include "rifo/core/types.hpp"

#include <cstdint>
#include <string_view>
#include <unordered_map>

namespace rifo {

enum class PolicyKind : std::uint8_t { Srpt, Stfq };

std::string_view to_string(PolicyKind k) noexcept;
PolicyKind parse_policy(std::string_view name);

/// Integer rank for a byte-valued quantity: ceil(value / quantum).
/// Throws std::overflow_error if the result does not fit in a Rank.
Rank quantize_rank(std::uint64_t value, std::uint32_t quantum);

/// ceil(tag / quantum) for a non-negative rational tag.
Rank quantize_rank(Ratio tag, std::uint32_t quantum);

struct FlowProgress {
    FlowId flow_id = 0;
    std::uint64_t total_bytes = 0;
    std::uint64_t acked_bytes = 0;
    Ratio last_finish_tag{0, 1};
};

/// Remaining (unacknowledged) bytes of the flow in rank quanta.
Rank srpt_rank(const FlowProgress& flow, std::uint32_t quantum = kMtuBytes);

struct StfqTag {
    Ratio start;
    Ratio finish;
    Rank rank = 0;
};

/// Start-time fair queueing tag for the flow's next packet:
///   start  = max(virtual_time, last finish tag)
///   finish = start + size / weight
/// Updates the flow's finish tag; the rank is the quantized start tag.
StfqTag stfq_rank(FlowProgress& flow, Ratio virtual_time, std::uint32_t packet_size, Ratio weight,
                  std::uint32_t quantum = kMtuBytes);

/// Per-flow remaining-size bookkeeping at the senders.
class SrptPolicy {
public:
    explicit SrptPolicy(std::uint32_t quantum = kMtuBytes);

    void register_flow(FlowId flow, std::uint64_t total_bytes);
    void acknowledge(FlowId flow, std::uint64_t bytes);
    void forget(FlowId flow);

    /// Throws std::out_of_range for a flow that was never registered.
    Rank rank(FlowId flow) const;
    const FlowProgress& progress(FlowId flow) const;

private:
    std::uint32_t quantum_;
    std::unordered_map<FlowId, FlowProgress> flows_;
};

/// Start-time fair queueing state for one egress port. Virtual time follows
/// the start tag of the packet entering service.
class StfqPolicy {
public:
    explicit StfqPolicy(std::uint32_t quantum = kMtuBytes);

    /// Tags the packet, sets its rank and remembers its start tag until it
    /// is served or dropped.
    Rank stamp(Packet& packet, Ratio weight = Ratio(1, 1));
    void on_service(const Packet& packet);
    void on_drop(const Packet& packet);

    Ratio virtual_time() const noexcept { return virtual_time_; }
    std::size_t pending() const noexcept { return start_tags_.size(); }

private:
    std::uint32_t quantum_;
    Ratio virtual_time_{0, 1};
    std::unordered_map<FlowId, FlowProgress> flows_;
    std::unordered_map<PacketId, Ratio> start_tags_;
};

}  // namespace rifo
