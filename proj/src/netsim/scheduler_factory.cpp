#include "rifo/netsim/scheduler_factory.hpp"

#include "rifo/schedulers/aifo.hpp"
#include "rifo/schedulers/pifo.hpp"
#include "rifo/schedulers/rifo.hpp"
#include "rifo/schedulers/sp_pifo.hpp"

#include <stdexcept>

namespace rifo::netsim {

std::string_view to_string(SchedulerKind k) noexcept {
    switch (k) {
    case SchedulerKind::Rifo: return "rifo";
    case SchedulerKind::Aifo: return "aifo";
    case SchedulerKind::SpPifo: return "sppifo";
    case SchedulerKind::Pifo: return "pifo";
    case SchedulerKind::DropTail: return "droptail";
    }
    return "unknown";
}

SchedulerKind parse_scheduler(std::string_view name) {
    if (name == "rifo") return SchedulerKind::Rifo;
    if (name == "aifo") return SchedulerKind::Aifo;
    if (name == "sppifo") return SchedulerKind::SpPifo;
    if (name == "pifo") return SchedulerKind::Pifo;
    if (name == "droptail") return SchedulerKind::DropTail;
    throw std::invalid_argument("unknown scheduler '" + std::string(name) +
                                "' (expected rifo|aifo|sppifo|pifo|droptail)");
}

void SchedulerConfig::validate() const {
    if (capacity < 1) throw std::invalid_argument("B must be >= 1");
    if (tracking_range < 1) throw std::invalid_argument("T must be >= 1");
    if (guaranteed_fraction < Ratio(0, 1) || guaranteed_fraction >= Ratio(1, 1)) {
        throw std::invalid_argument("k must be in [0, 1)");
    }
    if (window < 1) throw std::invalid_argument("W must be >= 1");
    if (queue_count < 2) throw std::invalid_argument("n_queues must be >= 2");
}

std::string SchedulerConfig::params_key() const {
    std::string key = "B=" + std::to_string(capacity);
    switch (kind) {
    case SchedulerKind::Rifo:
        key += ";T=" + std::to_string(tracking_range) + ";k=" + guaranteed_fraction.to_string();
        if (arithmetic) {
            key += ";arith=" + std::string(dpapprox::to_string(arithmetic->arithmetic));
            if (arithmetic->scale_by_guaranteed_buffer) key += "+scaled";
        }
        break;
    case SchedulerKind::Aifo:
        key += ";W=" + std::to_string(window) + ";k=" + guaranteed_fraction.to_string();
        break;
    case SchedulerKind::SpPifo:
        key += ";n=" + std::to_string(queue_count);
        break;
    case SchedulerKind::Pifo:
    case SchedulerKind::DropTail:
        break;
    }
    return key;
}

std::unique_ptr<Scheduler> make_scheduler(const SchedulerConfig& config) {
    config.validate();
    switch (config.kind) {
    case SchedulerKind::Rifo: {
        const RifoParams params{config.capacity, config.tracking_range, config.guaranteed_fraction};
        if (config.arithmetic) {
            return std::make_unique<RifoScheduler>(
                params, dpapprox::make_score_rule(*config.arithmetic, config.capacity, config.guaranteed_fraction));
        }
        return std::make_unique<RifoScheduler>(params);
    }
    case SchedulerKind::Aifo:
        return std::make_unique<AifoScheduler>(AifoParams{config.capacity, config.window, config.guaranteed_fraction});
    case SchedulerKind::SpPifo:
        return std::make_unique<SpPifoScheduler>(SpPifoParams::from_total(config.capacity, config.queue_count));
    case SchedulerKind::Pifo:
        return std::make_unique<PifoScheduler>(config.capacity);
    case SchedulerKind::DropTail:
        return std::make_unique<DropTailScheduler>(config.capacity);
    }
    throw std::logic_error("make_scheduler: unhandled kind");
}

}  // namespace rifo::netsim
