#include "rifo/schedulers/aifo.hpp"
#include "rifo/schedulers/rifo.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace rifo {

Ratio aifo_quantile(std::span<const Rank> window, Rank rank) {
    if (window.empty()) return Ratio(0, 1);
    const auto below = std::count_if(window.begin(), window.end(), [rank](Rank x) { return x < rank; });
    return Ratio(below, static_cast<std::int64_t>(window.size()));
}

SchedulerDecision aifo_admit(Ratio quantile, QueueState q, Ratio k) {
    if (q.full()) return SchedulerDecision::drop(Reason::QueueFull);
    if (within_guaranteed_buffer(q, k)) return SchedulerDecision::admit(Reason::GuaranteedBuffer);
    // quantile <= (B - l) * k.den / ((k.den - k.num) * B)
    const Ratio threshold(static_cast<std::int64_t>(q.capacity - q.occupancy) * k.den(),
                          (k.den() - k.num()) * static_cast<std::int64_t>(q.capacity));
    if (quantile <= threshold) return SchedulerDecision::admit(Reason::ScoreCondition);
    return SchedulerDecision::drop(Reason::Rejected);
}

RankWindow::RankWindow(std::uint32_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("aifo: window W must be >= 1");
}

void RankWindow::push(Rank rank) {
    if (ring_.size() < capacity_) {
        ring_.push_back(rank);
        return;
    }
    ring_[head_] = rank;
    head_ = (head_ + 1) % capacity_;
}

Ratio RankWindow::quantile(Rank rank) const { return aifo_quantile(ring_, rank); }

std::vector<Rank> RankWindow::ordered() const {
    std::vector<Rank> out;
    out.reserve(ring_.size());
    for (std::size_t i = 0; i < ring_.size(); ++i) out.push_back(ring_[(head_ + i) % ring_.size()]);
    return out;
}

AifoScheduler::AifoScheduler(AifoParams params) : params_(params), window_(params.window) {
    if (params_.capacity == 0) throw std::invalid_argument("aifo: capacity B must be >= 1");
    if (params_.guaranteed_fraction < Ratio(0, 1) || params_.guaranteed_fraction >= Ratio(1, 1)) {
        throw std::invalid_argument("aifo: guaranteed fraction k must be in [0, 1)");
    }
}

SchedulerDecision AifoScheduler::do_enqueue(Packet&& packet, SimTime /*now*/) {
    window_.push(packet.rank);
    const auto d = aifo_admit(window_.quantile(packet.rank), queue_state(), params_.guaranteed_fraction);
    if (d.admitted()) fifo_.push_back(std::move(packet));
    return d;
}

std::optional<Packet> AifoScheduler::do_dequeue(SimTime /*now*/) {
    if (fifo_.empty()) return std::nullopt;
    Packet p = std::move(fifo_.front());
    fifo_.pop_front();
    return p;
}

}  // namespace rifo
