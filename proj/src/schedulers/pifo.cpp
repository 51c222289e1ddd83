#include "rifo/schedulers/pifo.hpp"

#include <stdexcept>

namespace rifo {

PifoScheduler::PifoScheduler(std::uint32_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("pifo: capacity B must be >= 1");
}

SchedulerDecision PifoScheduler::do_enqueue(Packet&& packet, SimTime /*now*/) {
    if (heap_.size() >= capacity_) return SchedulerDecision::drop(Reason::QueueFull);
    const Rank r = packet.rank;
    heap_.emplace(std::pair{r, arrivals_++}, std::move(packet));
    return SchedulerDecision::admit(Reason::Inserted);
}

std::optional<Packet> PifoScheduler::do_dequeue(SimTime /*now*/) {
    if (heap_.empty()) return std::nullopt;
    auto node = heap_.extract(heap_.begin());
    return std::move(node.mapped());
}

DropTailScheduler::DropTailScheduler(std::uint32_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("droptail: capacity B must be >= 1");
}

SchedulerDecision DropTailScheduler::do_enqueue(Packet&& packet, SimTime /*now*/) {
    if (fifo_.size() >= capacity_) return SchedulerDecision::drop(Reason::QueueFull);
    fifo_.push_back(std::move(packet));
    return SchedulerDecision::admit(Reason::Inserted);
}

std::optional<Packet> DropTailScheduler::do_dequeue(SimTime /*now*/) {
    if (fifo_.empty()) return std::nullopt;
    Packet p = std::move(fifo_.front());
    fifo_.pop_front();
    return p;
}

}  // namespace rifo
