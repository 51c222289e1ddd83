#include "rifo/schedulers/sp_pifo.hpp"

#include <stdexcept>
#include <utility>

namespace rifo {

SpPifoParams SpPifoParams::from_total(std::uint32_t total, std::uint32_t queues) {
    if (queues == 0) throw std::invalid_argument("sppifo: queue count must be >= 1");
    return {queues, (total + queues - 1) / queues};
}

SpPifoScheduler::SpPifoScheduler(SpPifoParams params)
    : params_(params), queues_(params.queue_count), bounds_(params.queue_count, 0) {
    if (params_.queue_count < 2) throw std::invalid_argument("sppifo: needs at least 2 queues");
    if (params_.queue_capacity == 0) throw std::invalid_argument("sppifo: per-queue capacity must be >= 1");
}

SchedulerDecision SpPifoScheduler::do_enqueue(Packet&& packet, SimTime /*now*/) {
    const auto rank = static_cast<std::int64_t>(packet.rank);
    const std::size_t n = queues_.size();

    std::size_t target = n;
    for (std::size_t i = n; i-- > 0;) {
        if (bounds_[i] <= rank) {
            target = i;
            break;
        }
    }
    const bool push_down = target == n;
    if (push_down) target = 0;
    last_target_ = target;

    if (queues_[target].size() >= params_.queue_capacity) {
        return SchedulerDecision::drop(Reason::QueueFull);
    }
    if (push_down) {
        const std::int64_t cost = bounds_[0] - rank;
        for (auto& b : bounds_) b -= cost;
    } else {
        bounds_[target] = rank;
    }
    queues_[target].push_back(std::move(packet));
    ++resident_;
    return SchedulerDecision::admit(Reason::Inserted);
}

std::optional<Packet> SpPifoScheduler::do_dequeue(SimTime /*now*/) {
    for (auto& q : queues_) {
        if (!q.empty()) {
            Packet p = std::move(q.front());
            q.pop_front();
            --resident_;
            return p;
        }
    }
    return std::nullopt;
}

}  // namespace rifo
