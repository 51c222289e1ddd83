#include "rifo/policies/policies.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rifo {

namespace {

std::int64_t checked_i64(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("stfq: tag arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

Ratio add(Ratio a, Ratio b) {
    const std::int64_t g = std::gcd(a.den(), b.den());
    const __int128 den = static_cast<__int128>(a.den() / g) * b.den();
    const __int128 num = static_cast<__int128>(a.num()) * (b.den() / g) + static_cast<__int128>(b.num()) * (a.den() / g);
    return Ratio(checked_i64(num), checked_i64(den)).reduced();
}

}  // namespace

std::string_view to_string(PolicyKind k) noexcept {
    return k == PolicyKind::Srpt ? "srpt" : "stfq";
}

PolicyKind parse_policy(std::string_view name) {
    if (name == "srpt") return PolicyKind::Srpt;
    if (name == "stfq") return PolicyKind::Stfq;
    throw std::invalid_argument("unknown policy '" + std::string(name) + "' (expected srpt|stfq)");
}

Rank quantize_rank(std::uint64_t value, std::uint32_t quantum) {
    if (quantum == 0) throw std::invalid_argument("rank quantum must be >= 1");
    const std::uint64_t q = value / quantum + (value % quantum != 0 ? 1 : 0);
    if (q > std::numeric_limits<Rank>::max()) throw std::overflow_error("rank exceeds 32 bits");
    return static_cast<Rank>(q);
}

Rank quantize_rank(Ratio tag, std::uint32_t quantum) {
    if (quantum == 0) throw std::invalid_argument("rank quantum must be >= 1");
    if (tag.num() < 0) throw std::domain_error("negative tag");
    const __int128 den = static_cast<__int128>(tag.den()) * quantum;
    const __int128 q = (tag.num() + den - 1) / den;
    if (q > std::numeric_limits<Rank>::max()) throw std::overflow_error("rank exceeds 32 bits");
    return static_cast<Rank>(q);
}

Rank srpt_rank(const FlowProgress& flow, std::uint32_t quantum) {
    const std::uint64_t remaining = flow.acked_bytes >= flow.total_bytes ? 0 : flow.total_bytes - flow.acked_bytes;
    return quantize_rank(remaining, quantum);
}

StfqTag stfq_rank(FlowProgress& flow, Ratio virtual_time, std::uint32_t packet_size, Ratio weight,
                  std::uint32_t quantum) {
    if (weight <= Ratio(0, 1)) throw std::invalid_argument("stfq: weight must be positive");
    StfqTag tag;
    tag.start = std::max(virtual_time, flow.last_finish_tag);
    // size / weight == size * weight.den / weight.num
    tag.finish = add(tag.start, Ratio(checked_i64(static_cast<__int128>(packet_size) * weight.den()), weight.num()));
    tag.rank = quantize_rank(tag.start, quantum);
    flow.last_finish_tag = tag.finish;
    return tag;
}

SrptPolicy::SrptPolicy(std::uint32_t quantum) : quantum_(quantum) {
    if (quantum_ == 0) throw std::invalid_argument("srpt: rank quantum must be >= 1");
}

void SrptPolicy::register_flow(FlowId flow, std::uint64_t total_bytes) {
    if (total_bytes == 0) throw std::invalid_argument("srpt: flow size must be positive");
    if (!flows_.emplace(flow, FlowProgress{flow, total_bytes, 0, Ratio(0, 1)}).second) {
        throw std::invalid_argument("srpt: flow " + std::to_string(flow) + " registered twice");
    }
}

void SrptPolicy::acknowledge(FlowId flow, std::uint64_t bytes) {
    auto& p = flows_.at(flow);
    p.acked_bytes = std::min(p.total_bytes, p.acked_bytes + bytes);
}

void SrptPolicy::forget(FlowId flow) { flows_.erase(flow); }

const FlowProgress& SrptPolicy::progress(FlowId flow) const {
    const auto it = flows_.find(flow);
    if (it == flows_.end()) throw std::out_of_range("srpt: unknown flow " + std::to_string(flow));
    return it->second;
}

Rank SrptPolicy::rank(FlowId flow) const { return srpt_rank(progress(flow), quantum_); }

StfqPolicy::StfqPolicy(std::uint32_t quantum) : quantum_(quantum) {
    if (quantum_ == 0) throw std::invalid_argument("stfq: rank quantum must be >= 1");
}

Rank StfqPolicy::stamp(Packet& packet, Ratio weight) {
    auto [it, inserted] = flows_.try_emplace(packet.flow_id);
    if (inserted) it->second.flow_id = packet.flow_id;
    const StfqTag tag = stfq_rank(it->second, virtual_time_, packet.size_bytes, weight, quantum_);
    start_tags_[packet.id] = tag.start;
    packet.rank = tag.rank;
    return tag.rank;
}

void StfqPolicy::on_service(const Packet& packet) {
    const auto it = start_tags_.find(packet.id);
    if (it == start_tags_.end()) return;
    virtual_time_ = std::max(virtual_time_, it->second);
    start_tags_.erase(it);
}

void StfqPolicy::on_drop(const Packet& packet) { start_tags_.erase(packet.id); }

}  // namespace rifo
