#pragma once

#include "rifo/core/scheduler.hpp"
#include "rifo/netsim/scheduler_factory.hpp"
#include "rifo/netsim/topology.hpp"
#include "rifo/policies/policies.hpp"
#include "rifo/workload/workload.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

namespace rifo::netsim {

/// Minimal sender: at most `window_packets` unacknowledged packets per flow.
/// A dropped packet is reported to its sender at the moment of the drop and
/// re-sent `retransmit_delay_ns` later. ACKs return over an uncongested
/// reverse path after one link delay per hop.
struct TransportConfig {
    std::uint32_t window_packets = 1;
    SimTime retransmit_delay_ns = 0;

    void validate() const;
};

/// Forward latency of one MTU packet over the longest path plus the ACK return.
SimTime base_rtt_ns(const Topology& topo);

/// Window = bandwidth-delay product of the access link in MTU packets;
/// retransmit delay = 2 x base RTT.
TransportConfig default_transport(const Topology& topo);

/// Ordering of the (unbounded) host NIC queues.
enum class HostQueue : std::uint8_t { RankOrdered, Fifo };

enum class EventKind : std::uint8_t {
    FlowArrival,
    PacketArrivalAtPort,
    TransmissionComplete,
    RetransmitTimer,
    Delivery,
    AckArrival,
};

/// Observer record emitted after each processed event.
struct TraceRecord {
    SimTime time = 0;
    SimTime scheduled_at = 0;
    EventKind kind = EventKind::FlowArrival;
    PortId port = 0;          // meaningful for port events
    FlowId flow = 0;
    std::uint32_t port_backlog = 0;  // packets resident at `port` after the event
    bool port_busy = false;          // `port` transmitting after the event
};

struct SimulationConfig {
    Topology topology;
    SchedulerConfig scheduler;
    PolicyKind policy = PolicyKind::Srpt;
    std::uint32_t rank_quantum = kMtuBytes;
    TransportConfig transport = default_transport(Topology{});
    HostQueue host_queue = HostQueue::RankOrdered;
    SimTime until_ns = std::numeric_limits<SimTime>::max();

    /// Optional per-port scheduler override (tests); return nullptr to keep the default.
    std::function<std::unique_ptr<Scheduler>(PortId, PortKind)> port_scheduler;
    std::function<void(const TraceRecord&)> observer;

    void validate() const;
};

struct PortReport {
    PortId port = 0;
    PortKind kind = PortKind::HostUplink;
    SchedulerCounters counters;
};

struct SimulationResult {
    std::vector<FlowRecord> flows;  // input order, completion filled in
    std::vector<PortReport> ports;
    std::uint64_t dropped_packets = 0;
    std::uint64_t retransmissions = 0;
    std::uint64_t events = 0;
    SimTime end_time = 0;

    std::uint64_t unfinished_flows() const;
    SchedulerCounters totals() const;
};

/// Runs the event timeline until it drains or passes `until_ns`. Flows that
/// have not delivered every byte by then stay without a completion time.
SimulationResult run_simulation(const SimulationConfig& config, std::vector<FlowRecord> flows);

}  // namespace rifo::netsim
