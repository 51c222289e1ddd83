#pragma once

#include "rifo/core/ratio.hpp"
#include "rifo/core/scheduler.hpp"

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

namespace rifo {

/// Fraction of window entries strictly below `rank`. An empty window yields 0.
Ratio aifo_quantile(std::span<const Rank> window, Rank rank);

/// Admission given the packet's window quantile: guaranteed buffer first, then
/// quantile <= (B - l) / ((1 - k) * B).
SchedulerDecision aifo_admit(Ratio quantile, QueueState q, Ratio k);

/// Sliding window of the last W observed ranks, oldest evicted first.
class RankWindow {
public:
    explicit RankWindow(std::uint32_t capacity);

    void push(Rank rank);
    Ratio quantile(Rank rank) const;

    std::uint32_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return ring_.size(); }
    /// Contents, oldest first.
    std::vector<Rank> ordered() const;

private:
    std::uint32_t capacity_;
    std::vector<Rank> ring_;
    std::size_t head_ = 0;  // oldest entry once the ring is full
};

struct AifoParams {
    std::uint32_t capacity = 20;
    std::uint32_t window = 50;
    Ratio guaranteed_fraction{1, 10};
};

/// Single FIFO queue admitting by rank quantile against free queue space.
/// Every arriving rank enters the window before its own decision.
class AifoScheduler final : public Scheduler {
public:
    explicit AifoScheduler(AifoParams params);

    std::uint32_t size() const noexcept override { return static_cast<std::uint32_t>(fifo_.size()); }
    std::uint32_t capacity() const noexcept override { return params_.capacity; }
    std::string name() const override { return "aifo"; }

    const RankWindow& window() const noexcept { return window_; }

protected:
    SchedulerDecision do_enqueue(Packet&& packet, SimTime now) override;
    std::optional<Packet> do_dequeue(SimTime now) override;

private:
    AifoParams params_;
    RankWindow window_;
    std::deque<Packet> fifo_;
};

}  // namespace rifo
