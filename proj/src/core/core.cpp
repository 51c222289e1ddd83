#include "rifo/core/ratio.hpp"
#include "rifo/core/scheduler.hpp"
#include "rifo/core/types.hpp"

#include <cmath>
#include <utility>

namespace rifo {

Ratio Ratio::from_decimal(double value) {
    if (!std::isfinite(value)) {
        throw std::domain_error("Ratio: non-finite decimal");
    }
    constexpr std::int64_t kDen = 1'000'000;
    return Ratio(std::llround(value * static_cast<double>(kDen)), kDen).reduced();
}

std::string Ratio::to_string() const {
    const Ratio r = reduced();
    if (r.den_ == 1) return std::to_string(r.num_);
    return std::to_string(r.num_) + "/" + std::to_string(r.den_);
}

std::string_view to_string(Verdict v) noexcept {
    return v == Verdict::Admit ? "admit" : "drop";
}

std::string_view to_string(Reason r) noexcept {
    switch (r) {
    case Reason::GuaranteedBuffer: return "guaranteed_buffer";
    case Reason::ScoreCondition: return "score_condition";
    case Reason::DegenerateMinMax: return "degenerate_min_max";
    case Reason::QueueFull: return "queue_full";
    case Reason::Rejected: return "rejected";
    case Reason::Inserted: return "inserted";
    case Reason::TailDropped: return "tail_dropped";
    }
    return "unknown";
}

SchedulerDecision SchedulerDecision::admit(Reason reason) {
    if (!consistent(Verdict::Admit, reason)) {
        throw std::logic_error("SchedulerDecision: reason " + std::string(to_string(reason)) +
                               " cannot accompany admit");
    }
    return {Verdict::Admit, reason};
}

SchedulerDecision SchedulerDecision::drop(Reason reason) {
    if (!consistent(Verdict::Drop, reason)) {
        throw std::logic_error("SchedulerDecision: reason " + std::string(to_string(reason)) +
                               " cannot accompany drop");
    }
    return {Verdict::Drop, reason};
}

SchedulerDecision Scheduler::enqueue(Packet packet, SimTime now) {
    ++counters_.offered;
    packet.enqueue_time = now;
    const SchedulerDecision d = do_enqueue(std::move(packet), now);
    if (d.admitted()) {
        ++counters_.admitted;
    } else {
        ++counters_.dropped;
    }
    return d;
}

std::optional<Packet> Scheduler::dequeue(SimTime now) {
    auto p = do_dequeue(now);
    if (p) ++counters_.dequeued;
    return p;
}

}  // namespace rifo
