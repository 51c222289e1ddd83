#include "rifo/netsim/simulator.hpp"

#include "rifo/netsim/event_queue.hpp"
#include "rifo/schedulers/pifo.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace rifo::netsim {

void TransportConfig::validate() const {
    if (window_packets < 1) throw std::invalid_argument("transport.window_packets must be >= 1");
    if (retransmit_delay_ns < 0) throw std::invalid_argument("transport.retransmit_delay_ns must be >= 0");
}

SimTime base_rtt_ns(const Topology& topo) {
    const SimTime access = serialization_ns(kMtuBytes, topo.access_bps);
    const SimTime core = serialization_ns(kMtuBytes, topo.core_bps);
    const int hops = topo.leaf_count > 1 ? 4 : 2;
    const SimTime forward = hops == 4 ? 2 * access + 2 * core + 4 * topo.link_delay_ns
                                      : 2 * access + 2 * topo.link_delay_ns;
    return forward + hops * topo.link_delay_ns;
}

TransportConfig default_transport(const Topology& topo) {
    const SimTime rtt = base_rtt_ns(topo);
    const unsigned __int128 bdp_bits = static_cast<unsigned __int128>(topo.access_bps) * static_cast<std::uint64_t>(rtt);
    const unsigned __int128 per_packet = static_cast<unsigned __int128>(8U) * kMtuBytes * 1'000'000'000U;
    const auto window = static_cast<std::uint32_t>((bdp_bits + per_packet - 1) / per_packet);
    return {std::max<std::uint32_t>(1, window), 2 * rtt};
}

void SimulationConfig::validate() const {
    topology.validate();
    scheduler.validate();
    transport.validate();
    if (rank_quantum == 0) throw std::invalid_argument("policy.quantum_bytes must be >= 1");
    if (until_ns < 0) throw std::invalid_argument("until_ns must be >= 0");
}

std::uint64_t SimulationResult::unfinished_flows() const {
    return static_cast<std::uint64_t>(
        std::count_if(flows.begin(), flows.end(), [](const FlowRecord& f) { return !f.completion_time; }));
}

SchedulerCounters SimulationResult::totals() const {
    SchedulerCounters t;
    for (const auto& p : ports) t += p.counters;
    return t;
}

namespace {

struct Event {
    EventKind kind;
    SimTime scheduled_at;
    std::uint32_t flow_index;
    PortId port;
    Packet packet;
};

struct Port {
    PortKind kind;
    std::uint64_t rate_bps;
    std::unique_ptr<Scheduler> scheduler;
    std::optional<StfqPolicy> stfq;
    bool busy = false;
    Packet in_service;
};

struct FlowState {
    std::vector<PortId> path;
    std::uint32_t segments = 0;
    std::uint32_t next_new_segment = 0;
    std::uint32_t outstanding = 0;
    std::uint32_t delivered_count = 0;
    std::vector<bool> delivered;
};

class Simulator {
public:
    Simulator(const SimulationConfig& config, std::vector<FlowRecord> flows)
        : config_(config), layout_(config.topology), srpt_(config.rank_quantum) {
        result_.flows = std::move(flows);
        build_ports();
        states_.resize(result_.flows.size());
        for (std::uint32_t i = 0; i < result_.flows.size(); ++i) {
            const auto& f = result_.flows[i];
            if (f.src_host == f.dst_host) throw std::invalid_argument("flow " + std::to_string(f.flow_id) + ": src == dst");
            if (f.size_bytes == 0) throw std::invalid_argument("flow " + std::to_string(f.flow_id) + ": empty flow");
            if (f.arrival_time < 0) throw std::invalid_argument("flow " + std::to_string(f.flow_id) + ": negative arrival");
            if (!index_of_.emplace(f.flow_id, i).second) {
                throw std::invalid_argument("duplicate flow id " + std::to_string(f.flow_id));
            }
            events_.schedule(f.arrival_time, Event{EventKind::FlowArrival, 0, i, 0, {}});
        }
    }

    SimulationResult run() {
        while (!events_.empty() && events_.next_time() <= config_.until_ns) {
            auto entry = events_.pop();
            ++result_.events;
            dispatch(entry.payload);
            if (config_.observer) notify(entry.time, entry.payload);
        }
        result_.end_time = events_.now();
        for (PortId p = 0; p < ports_.size(); ++p) {
            result_.ports.push_back({p, ports_[p].kind, ports_[p].scheduler->counters()});
        }
        return std::move(result_);
    }

private:
    void build_ports() {
        ports_.reserve(layout_.port_count());
        for (PortId p = 0; p < layout_.port_count(); ++p) {
            Port port{layout_.kind(p), layout_.rate_bps(p), nullptr, std::nullopt, false, {}};
            if (config_.port_scheduler) port.scheduler = config_.port_scheduler(p, port.kind);
            if (!port.scheduler) {
                if (port.kind == PortKind::HostUplink) {
                    if (config_.host_queue == HostQueue::RankOrdered) {
                        port.scheduler = std::make_unique<PifoScheduler>(kUnboundedCapacity);
                    } else {
                        port.scheduler = std::make_unique<DropTailScheduler>(kUnboundedCapacity);
                    }
                } else {
                    port.scheduler = make_scheduler(config_.scheduler);
                }
            }
            if (config_.policy == PolicyKind::Stfq) port.stfq.emplace(config_.rank_quantum);
            ports_.push_back(std::move(port));
        }
    }

    SimTime now() const noexcept { return events_.now(); }

    void schedule(SimTime at, EventKind kind, std::uint32_t flow_index, PortId port, const Packet& packet) {
        events_.schedule(at, Event{kind, now(), flow_index, port, packet});
    }

    void dispatch(const Event& ev) {
        switch (ev.kind) {
        case EventKind::FlowArrival: on_flow_arrival(ev.flow_index); break;
        case EventKind::PacketArrivalAtPort: arrive_at_port(ev.port, ev.flow_index, ev.packet); break;
        case EventKind::TransmissionComplete: on_transmission_complete(ev.port); break;
        case EventKind::RetransmitTimer: send_segment(ev.flow_index, ev.packet.segment); break;
        case EventKind::Delivery: on_delivery(ev.flow_index, ev.packet); break;
        case EventKind::AckArrival: on_ack(ev.flow_index, ev.packet); break;
        }
    }

    void notify(SimTime time, const Event& ev) const {
        TraceRecord r;
        r.time = time;
        r.scheduled_at = ev.scheduled_at;
        r.kind = ev.kind;
        r.port = ev.port;
        r.flow = result_.flows[ev.flow_index].flow_id;
        if (ev.kind == EventKind::PacketArrivalAtPort || ev.kind == EventKind::TransmissionComplete) {
            r.port_backlog = ports_[ev.port].scheduler->size();
            r.port_busy = ports_[ev.port].busy;
        }
        config_.observer(r);
    }

    void on_flow_arrival(std::uint32_t index) {
        const auto& rec = result_.flows[index];
        auto& st = states_[index];
        st.path = ecmp_route(rec.flow_id, rec.src_host, rec.dst_host, config_.topology);
        st.segments = static_cast<std::uint32_t>((rec.size_bytes + kMtuBytes - 1) / kMtuBytes);
        st.delivered.assign(st.segments, false);
        srpt_.register_flow(rec.flow_id, rec.size_bytes);
        fill_window(index);
    }

    void fill_window(std::uint32_t index) {
        auto& st = states_[index];
        while (st.outstanding < config_.transport.window_packets && st.next_new_segment < st.segments) {
            ++st.outstanding;
            send_segment(index, st.next_new_segment++);
        }
    }

    std::uint32_t segment_size(std::uint32_t index, std::uint32_t segment) const {
        const std::uint64_t offset = static_cast<std::uint64_t>(segment) * kMtuBytes;
        return static_cast<std::uint32_t>(std::min<std::uint64_t>(kMtuBytes, result_.flows[index].size_bytes - offset));
    }

    void send_segment(std::uint32_t index, std::uint32_t segment) {
        const auto& rec = result_.flows[index];
        Packet p;
        p.id = next_packet_id_++;
        p.flow_id = rec.flow_id;
        p.size_bytes = segment_size(index, segment);
        p.segment = segment;
        p.hop = 0;
        p.rank = config_.policy == PolicyKind::Srpt ? srpt_.rank(rec.flow_id) : 0;
        arrive_at_port(states_[index].path.front(), index, p);
    }

    void arrive_at_port(PortId port_id, std::uint32_t index, Packet packet) {
        Port& port = ports_[port_id];
        if (port.stfq) port.stfq->stamp(packet);
        const Packet copy = packet;
        const SchedulerDecision d = port.scheduler->enqueue(std::move(packet), now());
        if (!d.admitted()) {
            if (port.stfq) port.stfq->on_drop(copy);
            ++result_.dropped_packets;
            ++result_.retransmissions;
            schedule(now() + config_.transport.retransmit_delay_ns, EventKind::RetransmitTimer, index, port_id, copy);
            return;
        }
        if (!port.busy) start_transmission(port_id);
    }

    void start_transmission(PortId port_id) {
        Port& port = ports_[port_id];
        auto next = port.scheduler->dequeue(now());
        if (!next) return;
        if (port.stfq) port.stfq->on_service(*next);
        port.busy = true;
        port.in_service = *next;
        schedule(now() + serialization_ns(next->size_bytes, port.rate_bps), EventKind::TransmissionComplete,
                 flow_index_of(*next), port_id, *next);
    }

    std::uint32_t flow_index_of(const Packet& p) const { return index_of_.at(p.flow_id); }

    void on_transmission_complete(PortId port_id) {
        Port& port = ports_[port_id];
        Packet pkt = port.in_service;
        port.busy = false;
        const std::uint32_t index = flow_index_of(pkt);
        const auto& path = states_[index].path;
        ++pkt.hop;
        const SimTime arrive = now() + config_.topology.link_delay_ns;
        if (pkt.hop < path.size()) {
            schedule(arrive, EventKind::PacketArrivalAtPort, index, path[pkt.hop], pkt);
        } else {
            schedule(arrive, EventKind::Delivery, index, port_id, pkt);
        }
        if (!port.scheduler->empty()) start_transmission(port_id);
    }

    void on_delivery(std::uint32_t index, const Packet& pkt) {
        auto& st = states_[index];
        if (st.delivered[pkt.segment]) {
            throw std::logic_error("duplicate delivery of flow " + std::to_string(pkt.flow_id) + " segment " +
                                   std::to_string(pkt.segment));
        }
        st.delivered[pkt.segment] = true;
        if (++st.delivered_count == st.segments) result_.flows[index].completion_time = now();
        const SimTime reverse = static_cast<SimTime>(st.path.size()) * config_.topology.link_delay_ns;
        schedule(now() + reverse, EventKind::AckArrival, index, 0, pkt);
    }

    void on_ack(std::uint32_t index, const Packet& pkt) {
        auto& st = states_[index];
        --st.outstanding;
        srpt_.acknowledge(pkt.flow_id, pkt.size_bytes);
        fill_window(index);
        if (st.outstanding == 0 && st.delivered_count == st.segments) srpt_.forget(pkt.flow_id);
    }

    const SimulationConfig& config_;
    PortLayout layout_;
    SrptPolicy srpt_;
    std::vector<Port> ports_;
    std::vector<FlowState> states_;
    EventQueue<Event> events_;
    SimulationResult result_;
    std::unordered_map<FlowId, std::uint32_t> index_of_;
    PacketId next_packet_id_ = 1;
};

}  // namespace

SimulationResult run_simulation(const SimulationConfig& config, std::vector<FlowRecord> flows) {
    config.validate();
    for (const auto& f : flows) {
        if (f.src_host >= config.topology.host_count() || f.dst_host >= config.topology.host_count()) {
            throw std::invalid_argument("flow " + std::to_string(f.flow_id) + ": host id out of range");
        }
    }
    return Simulator(config, std::move(flows)).run();
}

}  // namespace rifo::netsim
