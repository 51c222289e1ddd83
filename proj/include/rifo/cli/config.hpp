#pragma once

#include "rifo/metrics/metrics.hpp"
#include "rifo/netsim/scheduler_factory.hpp"
#include "rifo/netsim/simulator.hpp"
#include "rifo/netsim/topology.hpp"
#include "rifo/policies/policies.hpp"
#include "rifo/workload/workload.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rifo::cli {

/// Invalid configuration, tagged with the offending field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct DistributionSpec {
    std::string kind = "cdf";  // cdf | pareto | uniform
    std::string file;          // cdf
    double shape = 1.05;       // pareto
    std::optional<double> scale;
    std::optional<double> mean_bytes;
    std::string mean_from;     // pareto: CDF file whose mean fixes the scale
    std::uint64_t max_bytes = 30'000'000;
    std::uint64_t lo = 1;      // uniform
    std::uint64_t hi = 1;
};

struct WorkloadSpec {
    std::string name = "websearch";
    DistributionSpec distribution;
    std::vector<double> loads{0.7};
    SimTime horizon_ns = 200'000'000;
};

struct ExperimentConfig {
    netsim::Topology topology = netsim::Topology::desk_scale();
    netsim::SchedulerConfig scheduler;
    std::vector<netsim::SchedulerKind> schedulers;  // sweep list; empty means {scheduler.kind}
    PolicyKind policy = PolicyKind::Srpt;
    std::uint32_t rank_quantum = kMtuBytes;
    WorkloadSpec workload;
    std::vector<std::uint64_t> seeds{1};
    std::optional<std::uint32_t> window_packets;        // default: access BDP
    std::optional<SimTime> retransmit_delay_ns;         // default: 2 x base RTT
    std::optional<SimTime> until_ns;                    // default: 4 x horizon
    netsim::HostQueue host_queue = netsim::HostQueue::RankOrdered;
    std::vector<FlowClass> classes{FlowClass::Small};
    std::string output = "results.csv";
    unsigned jobs = 0;  // 0: hardware concurrency

    /// Directory that relative file paths in the config resolve against.
    std::filesystem::path base_dir = ".";

    std::vector<netsim::SchedulerKind> sweep_schedulers() const;
    netsim::TransportConfig transport() const;
    SimTime effective_until() const;
};

/// Parses and validates; unknown keys are rejected so typos surface.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Effective configuration with every default filled in. Feeding it back to
/// parse_config yields an identical configuration.
nlohmann::json to_json(const ExperimentConfig& config);

FlowSizeDistribution build_distribution(const ExperimentConfig& config);

}  // namespace rifo::cli
