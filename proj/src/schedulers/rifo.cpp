#include "rifo/schedulers/rifo.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace rifo {

Ratio rifo_normalize(Rank min, Rank max, Rank rank) {
    if (min >= max) {
        throw std::domain_error("rifo_normalize: requires min < max (got min=" + std::to_string(min) +
                                ", max=" + std::to_string(max) + ")");
    }
    const auto span = static_cast<std::int64_t>(max) - static_cast<std::int64_t>(min);
    const auto gap = std::clamp<std::int64_t>(static_cast<std::int64_t>(max) - static_cast<std::int64_t>(rank),
                                              0, span);
    return Ratio(gap, span);
}

Ratio rifo_queue_occupancy(QueueState q) {
    if (q.capacity == 0 || q.occupancy > q.capacity) {
        throw std::domain_error("rifo_queue_occupancy: invalid queue state");
    }
    return Ratio(static_cast<std::int64_t>(q.capacity) - q.occupancy, q.capacity);
}

RangeTracker::RangeTracker(std::uint32_t tracking_range) : tracking_range_(tracking_range) {
    if (tracking_range_ == 0) {
        throw std::invalid_argument("RangeTracker: tracking range T must be >= 1");
    }
}

RangeTracker RangeTracker::with_registers(std::uint32_t tracking_range, Rank min, Rank max,
                                          std::uint32_t counter) {
    RangeTracker t(tracking_range);
    if (counter > tracking_range) {
        throw std::invalid_argument("RangeTracker: counter exceeds tracking range");
    }
    t.min_ = min;
    t.max_ = max;
    t.counter_ = counter;
    return t;
}

void RangeTracker::observe(Rank rank) noexcept {
    if (counter_ == tracking_range_) {
        min_ = max_ = rank;
        counter_ = 1;
    } else {
        min_ = std::min(min_, rank);
        max_ = std::max(max_, rank);
        ++counter_;
    }
}

bool rational_score_rule(const ScoreInputs& in) {
    return rifo_normalize(in.min, in.max, in.rank) >= rifo_queue_occupancy(in.queue);
}

bool within_guaranteed_buffer(QueueState q, Ratio k) {
    if (k.num() == 0) return false;
    // l <= k.num / k.den * B  <=>  l * k.den <= k.num * B
    return static_cast<__int128>(q.occupancy) * k.den() <= static_cast<__int128>(k.num()) * q.capacity;
}

SchedulerDecision rifo_admit(const RangeTracker& tracker, Rank rank, QueueState q, Ratio k,
                             const ScoreRule& rule) {
    if (q.full()) return SchedulerDecision::drop(Reason::QueueFull);
    if (tracker.degenerate()) return SchedulerDecision::admit(Reason::DegenerateMinMax);
    if (within_guaranteed_buffer(q, k)) return SchedulerDecision::admit(Reason::GuaranteedBuffer);
    if (rule(ScoreInputs{tracker.min(), tracker.max(), rank, q})) {
        return SchedulerDecision::admit(Reason::ScoreCondition);
    }
    return SchedulerDecision::drop(Reason::Rejected);
}

RifoScheduler::RifoScheduler(RifoParams params, ScoreRule rule)
    : params_(params), rule_(std::move(rule)), tracker_(params.tracking_range) {
    if (params_.capacity == 0) throw std::invalid_argument("rifo: capacity B must be >= 1");
    if (params_.guaranteed_fraction < Ratio(0, 1) || params_.guaranteed_fraction >= Ratio(1, 1)) {
        throw std::invalid_argument("rifo: guaranteed fraction k must be in [0, 1)");
    }
    if (!rule_) throw std::invalid_argument("rifo: empty score rule");
}

SchedulerDecision RifoScheduler::do_enqueue(Packet&& packet, SimTime /*now*/) {
    tracker_.observe(packet.rank);
    const auto d = rifo_admit(tracker_, packet.rank, queue_state(), params_.guaranteed_fraction, rule_);
    if (d.admitted()) fifo_.push_back(std::move(packet));
    return d;
}

std::optional<Packet> RifoScheduler::do_dequeue(SimTime /*now*/) {
    if (fifo_.empty()) return std::nullopt;
    Packet p = std::move(fifo_.front());
    fifo_.pop_front();
    return p;
}

}  // namespace rifo
