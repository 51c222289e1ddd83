#pragma once

#include "rifo/core/rng.hpp"
#include "rifo/core/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rifo {

struct CdfPoint {
    std::uint64_t size_bytes = 0;
    double cumulative = 0.0;
};

/// Piecewise-linear flow size CDF. The first point carries a point mass
/// of its cumulative probability.
struct EmpiricalCdf {
    std::vector<CdfPoint> points;
};

/// Pareto sizes scale / u^(1/shape), capped at max_bytes.
struct ParetoSizes {
    double shape = 1.05;
    double scale = 1.0;
    std::uint64_t max_bytes = 1'000'000'000;

    /// Scale for which the uncapped mean equals `mean_bytes`:
    /// scale = mean * (shape - 1) / shape. Requires shape > 1.
    static ParetoSizes with_mean(double shape, double mean_bytes, std::uint64_t max_bytes);
};

struct UniformSizes {
    std::uint64_t lo = 1;
    std::uint64_t hi = 1;
};

using FlowSizeDistribution = std::variant<EmpiricalCdf, ParetoSizes, UniformSizes>;

class CdfParseError : public std::runtime_error {
public:
    CdfParseError(const std::string& source, std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parses "size_bytes<whitespace>cumulative_prob" lines; '#' starts a comment.
/// Points must increase strictly in both columns and end at probability 1.
EmpiricalCdf parse_cdf(std::istream& in, const std::string& source_name = "<stream>");
EmpiricalCdf load_cdf_file(const std::filesystem::path& path);

/// Throws std::invalid_argument on a malformed distribution.
void validate(const FlowSizeDistribution& dist);

/// Inverse-transform sample for a given uniform u in (0, 1]. Results are
/// rounded to whole bytes, never below 1.
std::uint64_t flow_size_at(const FlowSizeDistribution& dist, double u);

std::uint64_t sample_flow_size(const FlowSizeDistribution& dist, Rng& rng);

/// Analytic mean of the sampled sizes (before rounding to whole bytes).
double mean_flow_size(const FlowSizeDistribution& dist);

struct FlowRecord {
    FlowId flow_id = 0;
    HostId src_host = 0;
    HostId dst_host = 0;
    std::uint64_t size_bytes = 0;
    SimTime arrival_time = 0;
    std::optional<SimTime> completion_time;

    std::optional<SimTime> fct() const {
        if (!completion_time) return std::nullopt;
        return *completion_time - arrival_time;
    }
    friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

struct ArrivalSpec {
    double load = 0.5;                  // fraction of each access link
    std::uint64_t access_bps = 1'000'000'000;
    std::uint32_t host_count = 2;
    SimTime horizon_ns = 1'000'000;     // arrivals in [0, horizon)
};

/// Poisson rate per source host: load * access_bps / (8 * E[size]) flows/s.
double arrival_rate_per_host(double load, std::uint64_t access_bps, double mean_size_bytes);

/// One Poisson process per source host, uniform destination among the other
/// hosts. Flows are returned in (arrival_time, src_host) order with flow ids
/// assigned in that order starting at 0.
std::vector<FlowRecord> generate_arrivals(const ArrivalSpec& spec, const FlowSizeDistribution& dist, Rng& rng);

}  // namespace rifo
