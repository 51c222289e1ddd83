#include "rifo/cli/experiment.hpp"

#include "rifo/core/rng.hpp"
#include "rifo/metrics/metrics.hpp"
#include "rifo/schedulers/rifo.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

namespace rifo::cli {

namespace fs = std::filesystem;

std::string RunKey::id() const {
    return fmt::format("{}_load{}_seed{}", netsim::to_string(scheduler), load, seed);
}

bool key_less(const RunKey& a, const RunKey& b) {
    return std::tuple(netsim::to_string(a.scheduler), a.load, a.seed) <
           std::tuple(netsim::to_string(b.scheduler), b.load, b.seed);
}

netsim::SimulationResult run_experiment(const ExperimentConfig& config, const RunKey& key) {
    const FlowSizeDistribution dist = build_distribution(config);
    ArrivalSpec spec;
    spec.load = key.load;
    spec.access_bps = config.topology.access_bps;
    spec.host_count = config.topology.host_count();
    spec.horizon_ns = config.workload.horizon_ns;
    Rng rng(key.seed);
    auto flows = generate_arrivals(spec, dist, rng);

    netsim::SimulationConfig sim;
    sim.topology = config.topology;
    sim.scheduler = config.scheduler;
    sim.scheduler.kind = key.scheduler;
    sim.policy = config.policy;
    sim.rank_quantum = config.rank_quantum;
    sim.transport = config.transport();
    sim.host_queue = config.host_queue;
    sim.until_ns = config.effective_until();
    return netsim::run_simulation(sim, std::move(flows));
}

namespace {

std::string opt_fixed(const std::optional<double>& v) { return v ? fmt::format("{:.3f}", *v) : std::string(); }

}  // namespace

std::vector<std::string> result_rows(const ExperimentConfig& config, const RunKey& key,
                                     const netsim::SimulationResult& result) {
    netsim::SchedulerConfig sc = config.scheduler;
    sc.kind = key.scheduler;
    const auto throughput = large_flow_throughput(result.flows);
    const auto unfinished = unfinished_count(result.flows);
    std::vector<std::string> rows;
    for (const FlowClass c : config.classes) {
        const FctStats s = fct_stats(result.flows, c);
        rows.push_back(fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}", netsim::to_string(key.scheduler),
                                   to_string(config.policy), config.workload.name, key.load, key.seed, to_string(c),
                                   s.count, opt_fixed(s.mean_ns), s.p99_ns ? std::to_string(*s.p99_ns) : std::string(),
                                   opt_fixed(throughput), result.dropped_packets, unfinished, sc.params_key()));
    }
    return rows;
}

void write_run_csv(const ExperimentConfig& config, std::ostream& out) {
    const RunKey key{config.scheduler.kind, config.workload.loads.front(), config.seeds.front()};
    const auto result = run_experiment(config, key);
    out << kResultsHeader << '\n';
    for (const auto& row : result_rows(config, key, result)) out << row << '\n';
}

std::vector<RunKey> sweep_keys(const ExperimentConfig& config) {
    std::vector<RunKey> keys;
    for (auto s : config.sweep_schedulers()) {
        for (double load : config.workload.loads) {
            for (auto seed : config.seeds) keys.push_back({s, load, seed});
        }
    }
    std::sort(keys.begin(), keys.end(), key_less);
    keys.erase(std::unique(keys.begin(), keys.end(),
                           [](const RunKey& a, const RunKey& b) { return !key_less(a, b) && !key_less(b, a); }),
               keys.end());
    return keys;
}

namespace {

void write_atomically(const fs::path& target, const std::string& content) {
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::size_t run_sweep(const ExperimentConfig& config, const SweepOptions& options) {
    const fs::path output = options.output.empty() ? resolve_output(config.output) : options.output;
    const fs::path parts = options.parts_dir.empty() ? fs::path(output.string() + ".parts") : options.parts_dir;
    fs::create_directories(parts);
    if (output.has_parent_path()) fs::create_directories(output.parent_path());

    const auto keys = sweep_keys(config);
    std::vector<RunKey> pending;
    for (const auto& k : keys) {
        if (!fs::exists(parts / (k.id() + ".csv"))) pending.push_back(k);
    }

    unsigned jobs = options.jobs != 0 ? options.jobs : config.jobs;
    if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(pending.size(), 1)));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::optional<SweepError> error;

    auto worker = [&] {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size()) return;
            const RunKey& key = pending[i];
            try {
                const auto result = run_experiment(config, key);
                std::string content;
                for (const auto& row : result_rows(config, key, result)) content += row + '\n';
                write_atomically(parts / (key.id() + ".csv"), content);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (!error) error.emplace(key, e.what());
                failed = true;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
        worker();
    }
    if (error) throw *error;

    std::string merged = std::string(kResultsHeader) + '\n';
    for (const auto& k : keys) merged += read_file(parts / (k.id() + ".csv"));
    write_atomically(output, merged);
    return pending.size();
}

std::vector<MinMaxSample> trace_minmax(std::uint32_t tracking_range, std::uint64_t packets, std::uint64_t seed,
                                       Rank lo, Rank hi) {
    if (packets < tracking_range) throw std::invalid_argument("trace-minmax: packets must be >= T");
    if (lo > hi) throw std::invalid_argument("trace-minmax: lo must be <= hi");
    RangeTracker tracker(tracking_range);
    Rng rng(seed);
    std::vector<MinMaxSample> out;
    out.reserve(packets);
    for (std::uint64_t i = 0; i < packets; ++i) {
        tracker.observe(static_cast<Rank>(rng.uniform_int(lo, hi)));
        out.push_back({i, tracker.min(), tracker.max(), tracker.counter()});
    }
    return out;
}

void write_minmax_csv(const std::vector<MinMaxSample>& samples, std::ostream& out) {
    out << "packet_index,sampled_min,sampled_max\n";
    for (const auto& s : samples) out << s.packet_index << ',' << s.min << ',' << s.max << '\n';
}

void write_fidelity_csv(const dpapprox::FidelityReport& report, std::ostream& out) {
    std::string mode(dpapprox::to_string(report.mode.arithmetic));
    if (report.mode.scale_by_guaranteed_buffer) mode += "-scaled";
    out << "mode,trials,agreement,false_admit,false_drop\n";
    out << fmt::format("{},{},{:.6f},{},{}\n", mode, report.trials, report.agreement(), report.false_admit,
                       report.false_drop);
}

fs::path resolve_output(const fs::path& path) {
    const char* dir = std::getenv("RIFO_OUTPUT_DIR");
    if (dir == nullptr || *dir == '\0' || path.is_absolute()) return path;
    return fs::path(dir) / path;
}

}  // namespace rifo::cli
