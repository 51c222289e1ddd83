#include "rifo/netsim/topology.hpp"

#include <stdexcept>
#include <string>

namespace rifo::netsim {

void Topology::validate() const {
    if (leaf_count == 0) throw std::invalid_argument("topology.leaf_count must be >= 1");
    if (spine_count == 0) throw std::invalid_argument("topology.spine_count must be >= 1");
    if (hosts_per_leaf == 0) throw std::invalid_argument("topology.hosts_per_leaf must be >= 1");
    if (host_count() < 2) throw std::invalid_argument("topology needs at least 2 hosts");
    if (access_bps == 0) throw std::invalid_argument("topology.access_bps must be > 0 (zero-capacity link)");
    if (core_bps == 0) throw std::invalid_argument("topology.core_bps must be > 0 (zero-capacity link)");
    if (link_delay_ns < 0) throw std::invalid_argument("topology.link_delay_ns must be >= 0");
}

std::string_view to_string(PortKind k) noexcept {
    switch (k) {
    case PortKind::HostUplink: return "host_uplink";
    case PortKind::LeafDownlink: return "leaf_downlink";
    case PortKind::LeafUplink: return "leaf_uplink";
    case PortKind::SpineDownlink: return "spine_downlink";
    }
    return "unknown";
}

PortLayout::PortLayout(const Topology& topo)
    : hosts_(topo.host_count()),
      leaves_(topo.leaf_count),
      spines_(topo.spine_count),
      access_bps_(topo.access_bps),
      core_bps_(topo.core_bps) {}

PortKind PortLayout::kind(PortId p) const noexcept {
    if (p < hosts_) return PortKind::HostUplink;
    if (p < 2 * hosts_) return PortKind::LeafDownlink;
    if (p < 2 * hosts_ + leaves_ * spines_) return PortKind::LeafUplink;
    return PortKind::SpineDownlink;
}

std::uint64_t PortLayout::rate_bps(PortId p) const noexcept {
    return p < 2 * hosts_ ? access_bps_ : core_bps_;
}

std::uint32_t ecmp_spine(FlowId flow, std::uint32_t spine_count) noexcept {
    std::uint64_t x = flow + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return static_cast<std::uint32_t>(x % spine_count);
}

std::vector<PortId> ecmp_route(FlowId flow, HostId src, HostId dst, const Topology& topo) {
    if (src == dst) throw std::invalid_argument("ecmp_route: src == dst");
    if (src >= topo.host_count() || dst >= topo.host_count()) {
        throw std::invalid_argument("ecmp_route: host id out of range");
    }
    const PortLayout ports(topo);
    const auto src_leaf = topo.leaf_of(src);
    const auto dst_leaf = topo.leaf_of(dst);
    if (src_leaf == dst_leaf) return {ports.host_uplink(src), ports.leaf_downlink(dst)};
    const auto spine = ecmp_spine(flow, topo.spine_count);
    return {ports.host_uplink(src), ports.leaf_uplink(src_leaf, spine), ports.spine_downlink(spine, dst_leaf),
            ports.leaf_downlink(dst)};
}

SimTime serialization_ns(std::uint32_t bytes, std::uint64_t bps) noexcept {
    const unsigned __int128 bits_ns = static_cast<unsigned __int128>(bytes) * 8U * 1'000'000'000U;
    return static_cast<SimTime>((bits_ns + bps - 1) / bps);
}

}  // namespace rifo::netsim
