#pragma once

#include "rifo/core/types.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace rifo::netsim {

/// Two-tier leaf-spine fabric. Every host hangs off one leaf, every leaf
/// connects to every spine.
struct Topology {
    std::uint32_t leaf_count = 2;
    std::uint32_t spine_count = 2;
    std::uint32_t hosts_per_leaf = 4;
    std::uint64_t access_bps = 1'000'000'000;
    std::uint64_t core_bps = 4'000'000'000;
    SimTime link_delay_ns = 1'000;

    /// 8 servers, 1 Gbps access, 4 Gbps core.
    static Topology desk_scale() { return {}; }
    /// 9 leaves, 4 spines, 144 servers, 10 Gbps access, 40 Gbps core.
    static Topology full_scale() { return {9, 4, 16, 10'000'000'000, 40'000'000'000, 1'000}; }

    std::uint32_t host_count() const noexcept { return leaf_count * hosts_per_leaf; }
    std::uint32_t leaf_of(HostId host) const noexcept { return host / hosts_per_leaf; }

    /// Throws std::invalid_argument on zero counts, rates or a negative delay.
    void validate() const;
};

using PortId = std::uint32_t;

enum class PortKind : std::uint8_t { HostUplink, LeafDownlink, LeafUplink, SpineDownlink };

std::string_view to_string(PortKind k) noexcept;

/// Dense numbering of all egress ports:
///   [0, H)               host h -> its leaf
///   [H, 2H)              leaf -> host h
///   2H + leaf*S + spine  leaf -> spine
///   then spine*L + leaf  spine -> leaf
class PortLayout {
public:
    explicit PortLayout(const Topology& topo);

    PortId host_uplink(HostId h) const noexcept { return h; }
    PortId leaf_downlink(HostId h) const noexcept { return hosts_ + h; }
    PortId leaf_uplink(std::uint32_t leaf, std::uint32_t spine) const noexcept {
        return 2 * hosts_ + leaf * spines_ + spine;
    }
    PortId spine_downlink(std::uint32_t spine, std::uint32_t leaf) const noexcept {
        return 2 * hosts_ + leaves_ * spines_ + spine * leaves_ + leaf;
    }

    std::uint32_t port_count() const noexcept { return 2 * hosts_ + 2 * leaves_ * spines_; }
    PortKind kind(PortId p) const noexcept;
    std::uint64_t rate_bps(PortId p) const noexcept;

private:
    std::uint32_t hosts_;
    std::uint32_t leaves_;
    std::uint32_t spines_;
    std::uint64_t access_bps_;
    std::uint64_t core_bps_;
};

/// Spine used by a cross-leaf flow: a fixed hash of the flow id, so every
/// packet of a flow takes the same path.
std::uint32_t ecmp_spine(FlowId flow, std::uint32_t spine_count) noexcept;

/// Egress ports traversed from src to dst: 2 ports within a leaf, 4 across.
std::vector<PortId> ecmp_route(FlowId flow, HostId src, HostId dst, const Topology& topo);

/// ceil(bytes * 8e9 / bps) nanoseconds.
SimTime serialization_ns(std::uint32_t bytes, std::uint64_t bps) noexcept;

}  // namespace rifo::netsim
