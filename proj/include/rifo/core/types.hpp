#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace rifo {

/// Packet priority. Lower is more urgent. Ranks live in 32-bit switch registers.
using Rank = std::uint32_t;

inline constexpr Rank kRankInfinity = std::numeric_limits<Rank>::max();

/// Simulated time in nanoseconds.
using SimTime = std::int64_t;

using PacketId = std::uint64_t;
using FlowId = std::uint64_t;
using HostId = std::uint32_t;

inline constexpr std::uint32_t kMtuBytes = 1500;

struct Packet {
    PacketId id = 0;
    FlowId flow_id = 0;
    Rank rank = 0;
    std::uint32_t size_bytes = 0;
    SimTime enqueue_time = 0;

    // Simulator bookkeeping; schedulers ignore these.
    std::uint32_t segment = 0;  // index of this packet within its flow
    std::uint16_t hop = 0;      // index into the flow's port path
};

/// Queue capacity and current length, both counted in packets.
struct QueueState {
    std::uint32_t capacity = 1;
    std::uint32_t occupancy = 0;

    constexpr bool full() const noexcept { return occupancy >= capacity; }
};

enum class Verdict : std::uint8_t { Admit, Drop };

enum class Reason : std::uint8_t {
    GuaranteedBuffer,
    ScoreCondition,
    DegenerateMinMax,
    QueueFull,
    Rejected,
    Inserted,
    TailDropped,
};

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(Reason r) noexcept;

/// Verdict for one arriving packet together with the branch that produced it.
class SchedulerDecision {
public:
    static SchedulerDecision admit(Reason reason);
    static SchedulerDecision drop(Reason reason);

    constexpr Verdict verdict() const noexcept { return verdict_; }
    constexpr Reason reason() const noexcept { return reason_; }
    constexpr bool admitted() const noexcept { return verdict_ == Verdict::Admit; }

    friend constexpr bool operator==(const SchedulerDecision&, const SchedulerDecision&) = default;

private:
    constexpr SchedulerDecision(Verdict v, Reason r) noexcept : verdict_(v), reason_(r) {}

    Verdict verdict_;
    Reason reason_;
};

/// True when `reason` may accompany `verdict`.
constexpr bool consistent(Verdict verdict, Reason reason) noexcept {
    switch (reason) {
    case Reason::GuaranteedBuffer:
    case Reason::ScoreCondition:
    case Reason::DegenerateMinMax:
    case Reason::Inserted:
        return verdict == Verdict::Admit;
    case Reason::QueueFull:
    case Reason::Rejected:
    case Reason::TailDropped:
        return verdict == Verdict::Drop;
    }
    return false;
}

}  // namespace rifo
