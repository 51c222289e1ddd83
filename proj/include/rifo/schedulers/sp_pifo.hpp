#pragma once

#include "rifo/core/scheduler.hpp"

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

namespace rifo {

struct SpPifoParams {
    std::uint32_t queue_count = 8;
    std::uint32_t queue_capacity = 3;

    /// Splits a total buffer of `total` packets over `queues` queues, rounding up.
    static SpPifoParams from_total(std::uint32_t total, std::uint32_t queues);
};

/// Strict-priority FIFO queues with adaptive rank bounds.
///
/// Queue 0 has the highest priority. An arriving packet goes to the lowest
/// priority queue whose bound does not exceed its rank, and that bound is
/// raised to the rank (push-up). If even queue 0's bound exceeds the rank,
/// every bound drops by the difference and the packet joins queue 0
/// (push-down). Drops at a full destination queue leave the bounds untouched.
class SpPifoScheduler final : public Scheduler {
public:
    explicit SpPifoScheduler(SpPifoParams params);

    std::uint32_t size() const noexcept override { return resident_; }
    std::uint32_t capacity() const noexcept override { return params_.queue_count * params_.queue_capacity; }
    std::string name() const override { return "sppifo"; }

    /// Bounds can go negative after repeated push-downs.
    std::span<const std::int64_t> bounds() const noexcept { return bounds_; }
    std::uint32_t queue_size(std::size_t index) const { return static_cast<std::uint32_t>(queues_.at(index).size()); }
    /// Queue chosen for the most recent arrival, whether or not it was admitted.
    std::size_t last_target() const noexcept { return last_target_; }

protected:
    SchedulerDecision do_enqueue(Packet&& packet, SimTime now) override;
    std::optional<Packet> do_dequeue(SimTime now) override;

private:
    SpPifoParams params_;
    std::vector<std::deque<Packet>> queues_;
    std::vector<std::int64_t> bounds_;
    std::uint32_t resident_ = 0;
    std::size_t last_target_ = 0;
};

}  // namespace rifo
