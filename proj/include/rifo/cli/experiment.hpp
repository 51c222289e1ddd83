#pragma once

#include "rifo/cli/config.hpp"
#include "rifo/dpapprox/fidelity.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace rifo::cli {

/// One (scheduler, load, seed) combination.
struct RunKey {
    netsim::SchedulerKind scheduler = netsim::SchedulerKind::Rifo;
    double load = 0.5;
    std::uint64_t seed = 1;

    /// File-name-safe identifier, e.g. "rifo_load0.7_seed3".
    std::string id() const;
};

/// Sort order of merged CSVs: scheduler name, then load, then seed.
bool key_less(const RunKey& a, const RunKey& b);

/// Generates the workload for (load, seed) and simulates it. The workload
/// depends only on (config, load, seed), so every scheduler sees the same flows.
netsim::SimulationResult run_experiment(const ExperimentConfig& config, const RunKey& key);

inline constexpr const char* kResultsHeader =
    "scheduler,policy,workload,load,seed,class,count,mean_fct_ns,p99_fct_ns,throughput_bps,"
    "dropped_packets,unfinished_flows,params";

/// CSV rows (no header), one per configured flow class. Absent statistics
/// are left empty. throughput_bps is the large-flow throughput of the run.
std::vector<std::string> result_rows(const ExperimentConfig& config, const RunKey& key,
                                     const netsim::SimulationResult& result);

/// Runs a single combination (first load, first seed) and writes header + rows.
void write_run_csv(const ExperimentConfig& config, std::ostream& out);

class SweepError : public std::runtime_error {
public:
    SweepError(RunKey key, const std::string& what)
        : std::runtime_error("run " + key.id() + " failed: " + what), key_(key) {}
    const RunKey& key() const noexcept { return key_; }

private:
    RunKey key_;
};

struct SweepOptions {
    unsigned jobs = 0;  // 0: config.jobs, then hardware concurrency
    std::filesystem::path output;
    /// Per-job CSV fragments; existing fragments are reused, which makes an
    /// interrupted sweep resumable. Defaults to "<output>.parts".
    std::filesystem::path parts_dir;
};

/// Every (scheduler x load x seed) job, in merge order.
std::vector<RunKey> sweep_keys(const ExperimentConfig& config);

/// Runs missing jobs in a worker pool and writes the merged, key-sorted CSV.
/// Returns the number of jobs actually executed.
std::size_t run_sweep(const ExperimentConfig& config, const SweepOptions& options);

struct MinMaxSample {
    std::uint64_t packet_index = 0;
    Rank min = 0;
    Rank max = 0;
    std::uint32_t counter = 0;
};

/// Feeds uniform integer ranks on [lo, hi] through the range tracker and
/// records the registers after every packet.
std::vector<MinMaxSample> trace_minmax(std::uint32_t tracking_range, std::uint64_t packets, std::uint64_t seed,
                                       Rank lo = 0, Rank hi = 100);

void write_minmax_csv(const std::vector<MinMaxSample>& samples, std::ostream& out);

void write_fidelity_csv(const dpapprox::FidelityReport& report, std::ostream& out);

/// Output location, honouring RIFO_OUTPUT_DIR for relative paths.
std::filesystem::path resolve_output(const std::filesystem::path& path);

}  // namespace rifo::cli
