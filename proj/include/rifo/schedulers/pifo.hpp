#pragma once

#include "rifo/core/scheduler.hpp"

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <utility>

namespace rifo {

inline constexpr std::uint32_t kUnboundedCapacity = std::numeric_limits<std::uint32_t>::max();

/// Ideal push-in first-out queue: lowest rank leaves first, arrival order
/// among equal ranks. An arrival at a full queue is dropped; residents are
/// never evicted.
class PifoScheduler final : public Scheduler {
public:
    explicit PifoScheduler(std::uint32_t capacity);

    std::uint32_t size() const noexcept override { return static_cast<std::uint32_t>(heap_.size()); }
    std::uint32_t capacity() const noexcept override { return capacity_; }
    std::string name() const override { return "pifo"; }

protected:
    SchedulerDecision do_enqueue(Packet&& packet, SimTime now) override;
    std::optional<Packet> do_dequeue(SimTime now) override;

private:
    std::uint32_t capacity_;
    std::uint64_t arrivals_ = 0;
    std::map<std::pair<Rank, std::uint64_t>, Packet> heap_;
};

/// Plain FIFO with tail drop.
class DropTailScheduler final : public Scheduler {
public:
    explicit DropTailScheduler(std::uint32_t capacity);

    std::uint32_t size() const noexcept override { return static_cast<std::uint32_t>(fifo_.size()); }
    std::uint32_t capacity() const noexcept override { return capacity_; }
    std::string name() const override { return "droptail"; }

protected:
    SchedulerDecision do_enqueue(Packet&& packet, SimTime now) override;
    std::optional<Packet> do_dequeue(SimTime now) override;

private:
    std::uint32_t capacity_;
    std::deque<Packet> fifo_;
};

}  // namespace rifo
