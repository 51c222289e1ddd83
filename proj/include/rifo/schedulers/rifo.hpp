#pragma once

#include "rifo/core/ratio.hpp"
#include "rifo/core/scheduler.hpp"
#include "rifo/core/types.hpp"

#include <cstdint>
#include <deque>
#include <functional>

namespace rifo {

/// Min-max score of `rank` against the tracked range: (max - rank) / (max - min),
/// clamped to [0, 1]. Requires min < max; the min == max case belongs to the
/// degenerate-admit branch and throws std::domain_error here.
Ratio rifo_normalize(Rank min, Rank max, Rank rank);

/// Free fraction of the queue: (B - l) / B.
Ratio rifo_queue_occupancy(QueueState q);

/// The three mutable registers: Min, Max and the packet counter.
///
/// Every arriving packet is observed, admitted or not. When the counter has
/// reached the tracking range T, the arriving packet starts a new range:
/// Min = Max = rank and the counter restarts at 1.
class RangeTracker {
public:
    explicit RangeTracker(std::uint32_t tracking_range);

    /// Tracker with explicit register contents, e.g. to replay a mid-stream state.
    static RangeTracker with_registers(std::uint32_t tracking_range, Rank min, Rank max,
                                       std::uint32_t counter);

    void observe(Rank rank) noexcept;

    Rank min() const noexcept { return min_; }
    Rank max() const noexcept { return max_; }
    std::uint32_t counter() const noexcept { return counter_; }
    std::uint32_t tracking_range() const noexcept { return tracking_range_; }
    bool degenerate() const noexcept { return min_ == max_; }

private:
    std::uint32_t tracking_range_;
    Rank min_ = kRankInfinity;
    Rank max_ = 0;
    std::uint32_t counter_ = 0;
};

/// Everything the score comparison needs for one packet.
struct ScoreInputs {
    Rank min = 0;
    Rank max = 0;
    Rank rank = 0;
    QueueState queue;
};

/// Decides the score condition for a non-degenerate range. Swappable so the
/// integer data-plane arithmetic can stand in for the exact rational one.
using ScoreRule = std::function<bool(const ScoreInputs&)>;

/// rifo_normalize(...) >= rifo_queue_occupancy(...), exact rationals.
bool rational_score_rule(const ScoreInputs& in);

/// l <= k * B, exact. k == 0 disables the guaranteed buffer entirely.
bool within_guaranteed_buffer(QueueState q, Ratio k);

/// Admission for a packet whose rank the tracker has already observed.
SchedulerDecision rifo_admit(const RangeTracker& tracker, Rank rank, QueueState q, Ratio k,
                             const ScoreRule& rule = rational_score_rule);

struct RifoParams {
    std::uint32_t capacity = 20;
    std::uint32_t tracking_range = 50;
    Ratio guaranteed_fraction{1, 10};
};

/// Single FIFO queue with min-max range admission.
class RifoScheduler final : public Scheduler {
public:
    explicit RifoScheduler(RifoParams params, ScoreRule rule = rational_score_rule);

    std::uint32_t size() const noexcept override { return static_cast<std::uint32_t>(fifo_.size()); }
    std::uint32_t capacity() const noexcept override { return params_.capacity; }
    std::string name() const override { return "rifo"; }

    const RangeTracker& tracker() const noexcept { return tracker_; }
    const RifoParams& params() const noexcept { return params_; }

protected:
    SchedulerDecision do_enqueue(Packet&& packet, SimTime now) override;
    std::optional<Packet> do_dequeue(SimTime now) override;

private:
    RifoParams params_;
    ScoreRule rule_;
    RangeTracker tracker_;
    std::deque<Packet> fifo_;
};

}  // namespace rifo
