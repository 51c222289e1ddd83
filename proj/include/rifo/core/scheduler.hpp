#pragma once

#include "rifo/core/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace rifo {

struct SchedulerCounters {
    std::uint64_t offered = 0;
    std::uint64_t admitted = 0;
    std::uint64_t dropped = 0;
    std::uint64_t dequeued = 0;

    SchedulerCounters& operator+=(const SchedulerCounters& o) noexcept {
        offered += o.offered;
        admitted += o.admitted;
        dropped += o.dropped;
        dequeued += o.dequeued;
        return *this;
    }
};

/// Contract shared by every scheduler: an admitted packet is returned by
/// dequeue() exactly once; a dropped packet never is. A full queue is a Drop
/// verdict, never an exception.
///
/// Instances are single-threaded. The public entry points are non-virtual so
/// the counters stay correct regardless of the concrete discipline.
class Scheduler {
public:
    virtual ~Scheduler() = default;

    SchedulerDecision enqueue(Packet packet, SimTime now);
    std::optional<Packet> dequeue(SimTime now);

    /// Packets currently resident.
    virtual std::uint32_t size() const noexcept = 0;
    /// Total packet capacity.
    virtual std::uint32_t capacity() const noexcept = 0;
    virtual std::string name() const = 0;

    bool empty() const noexcept { return size() == 0; }
    QueueState queue_state() const noexcept { return {capacity(), size()}; }
    const SchedulerCounters& counters() const noexcept { return counters_; }

protected:
    virtual SchedulerDecision do_enqueue(Packet&& packet, SimTime now) = 0;
    virtual std::optional<Packet> do_dequeue(SimTime now) = 0;

private:
    SchedulerCounters counters_;
};

}  // namespace rifo
