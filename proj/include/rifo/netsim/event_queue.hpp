#pragma once

#include "rifo/core/types.hpp"

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rifo::netsim {

/// Min-ordered timeline. Events fire in (time, seq) order where seq is the
/// insertion counter, so simultaneous events keep their scheduling order.
template <typename Payload>
class EventQueue {
public:
    struct Entry {
        SimTime time;
        std::uint64_t seq;
        Payload payload;
    };

    /// Rejects events scheduled before the last popped timestamp.
    void schedule(SimTime time, Payload payload) {
        if (time < now_) throw std::logic_error("EventQueue: event scheduled in the past");
        heap_.push(Entry{time, next_seq_++, std::move(payload)});
    }

    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }
    SimTime next_time() const { return heap_.top().time; }
    SimTime now() const noexcept { return now_; }

    Entry pop() {
        Entry e = heap_.top();
        heap_.pop();
        now_ = e.time;
        return e;
    }

private:
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const noexcept {
            return a.time != b.time ? a.time > b.time : a.seq > b.seq;
        }
    };

    std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
    std::uint64_t next_seq_ = 0;
    SimTime now_ = 0;
};

}  // namespace rifo::netsim
