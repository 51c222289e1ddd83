#pragma once

// Reference models written directly from the algorithm statements. They share
// no code with the library so a bug cannot cancel itself out.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

struct Frac {
    long long num;
    long long den;  // > 0
};

inline bool geq(Frac a, Frac b) { return static_cast<__int128>(a.num) * b.den >= static_cast<__int128>(b.num) * a.den; }
inline bool leq(Frac a, Frac b) { return geq(b, a); }

// One step of the Min/Max/Counter registers.
struct Registers {
    std::uint32_t T;
    std::uint32_t min = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t max = 0;
    std::uint32_t counter = 0;

    void step(std::uint32_t r) {
        if (counter == T) {
            min = r;
            max = r;
            counter = 1;
        } else {
            min = std::min(min, r);
            max = std::max(max, r);
            ++counter;
        }
    }
};

// Admission line of the RIFO pseudocode evaluated on fractions. The queue
// full guard and "k = 0 means no guaranteed buffer" are the repository's
// documented reading of the pseudocode.
inline bool rifo_admits(const Registers& s, std::uint32_t r, long long B, long long l, Frac k) {
    if (l == B) return false;
    if (s.min == s.max) return true;
    if (k.num > 0 && leq(Frac{l, 1}, Frac{k.num * B, k.den})) return true;
    const Frac score{static_cast<long long>(s.max) - std::min<long long>(r, s.max), static_cast<long long>(s.max) - s.min};
    const Frac score_clamped = score.num > score.den ? Frac{1, 1} : score;
    return geq(score_clamped, Frac{B - l, B});
}

// Arrival (rank >= 0) or dequeue (rank < 0) script against a RIFO FIFO.
inline std::vector<bool> rifo_script(const std::vector<int>& ops, std::uint32_t T, long long B, Frac k) {
    Registers s{T};
    long long l = 0;
    std::vector<bool> out;
    for (int op : ops) {
        if (op < 0) {
            if (l > 0) --l;
            continue;
        }
        const auto r = static_cast<std::uint32_t>(op);
        s.step(r);
        const bool a = rifo_admits(s, r, B, l, k);
        if (a) ++l;
        out.push_back(a);
    }
    return out;
}

// E[max of T iid uniform integers on {0..n}] = sum_{m=1}^{n} P(max >= m).
inline double expected_window_max(unsigned n, unsigned T) {
    double e = 0.0;
    for (unsigned m = 1; m <= n; ++m) e += 1.0 - std::pow(static_cast<double>(m) / (n + 1), static_cast<double>(T));
    return e;
}

// Store-and-forward pipeline of one flow over ports with the given rates and
// a fixed per-hop delay, at most `window` packets in flight, ACKs returning
// after hops * delay. Returns the delivery time of the last byte.
struct Hop {
    std::uint64_t bps;
};

inline long long ser_ns(std::uint64_t bytes, std::uint64_t bps) {
    return static_cast<long long>((bytes * 8ULL * 1'000'000'000ULL + bps - 1) / bps);
}

inline long long pipeline_fct(std::uint64_t size, const std::vector<Hop>& hops, long long delay, unsigned window,
                              unsigned mtu = 1500) {
    const std::uint64_t n = (size + mtu - 1) / mtu;
    std::vector<long long> depart_prev(hops.size(), 0);  // last departure per hop
    std::vector<long long> ack(n, 0);
    long long last_delivery = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t bytes = std::min<std::uint64_t>(mtu, size - i * mtu);
        long long t = i < window ? 0 : ack[i - window];  // send time
        for (std::size_t h = 0; h < hops.size(); ++h) {
            const long long start = std::max(t, depart_prev[h]);
            depart_prev[h] = start + ser_ns(bytes, hops[h].bps);
            t = depart_prev[h] + delay;
        }
        last_delivery = t;
        ack[i] = t + static_cast<long long>(hops.size()) * delay;
    }
    return last_delivery;
}

}  // namespace oracle
