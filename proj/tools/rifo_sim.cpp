#include "rifo/cli/config.hpp"
#include "rifo/cli/experiment.hpp"
#include "rifo/dpapprox/fidelity.hpp"

#include <CLI11.hpp>

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

namespace fs = std::filesystem;
using namespace rifo;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

// "-" writes to stdout; anything else is written via a temporary and renamed.
template <typename Fn>
void emit(const std::string& target, Fn&& write) {
    if (target == "-") {
        write(std::cout);
        return;
    }
    const fs::path path = cli::resolve_output(target);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        write(out);
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Packet scheduling simulator for RIFO, AIFO, SP-PIFO, PIFO and drop-tail"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output;
    bool dump_config = false;
    auto* run = app.add_subcommand("run", "Simulate one scheduler, load and seed (the first of each in the config)");
    run->add_option("config", config_path, "JSON experiment config")->required();
    run->add_option("-o,--output", output, "CSV destination, '-' for stdout (default: config output)");
    run->add_flag("--dump-config", dump_config, "Print the effective configuration and exit");

    unsigned jobs = 0;
    auto* sweep = app.add_subcommand("sweep", "Run every scheduler x load x seed combination and merge the results");
    sweep->add_option("config", config_path, "JSON experiment config")->required();
    sweep->add_option("-j,--jobs", jobs, "Worker threads (default: config jobs, then all cores)");
    sweep->add_option("-o,--output", output, "Merged CSV destination (default: config output)");

    std::uint32_t tracking_range = 50;
    std::uint64_t packets = 1000;
    std::uint64_t seed = 1;
    Rank lo = 0;
    Rank hi = 100;
    auto* trace = app.add_subcommand("trace-minmax", "Record the sampled min/max registers over a uniform rank stream");
    trace->add_option("--T", tracking_range, "Tracking range")->required()->check(CLI::PositiveNumber);
    trace->add_option("--packets", packets, "Number of packets (>= T)")->required();
    trace->add_option("--seed", seed, "RNG seed")->required();
    trace->add_option("--lo", lo, "Smallest rank");
    trace->add_option("--hi", hi, "Largest rank");
    trace->add_option("-o,--output", output, "CSV destination, '-' for stdout")->default_val("-");

    std::string mode_name = "shift";
    std::uint64_t trials = 1'000'000;
    bool scale = false;
    bool pow2 = false;
    double k = 0.1;
    dpapprox::FidelityDomain domain;
    auto* compare = app.add_subcommand("compare-approx", "Measure agreement of an integer admission check with the exact rule");
    compare->add_option("--mode", mode_name, "exact | shift")->required();
    compare->add_option("--trials", trials, "Random states to compare")->required();
    compare->add_option("--seed", seed, "RNG seed")->required();
    compare->add_flag("--scale", scale, "Use round((1-k)B) as the left multiplier");
    compare->add_option("--k", k, "Guaranteed-buffer fraction used with --scale")->check(CLI::Range(0.0, 1.0));
    compare->add_option("--capacity", domain.capacity, "Queue capacity B")->check(CLI::PositiveNumber);
    compare->add_option("--rank-limit", domain.rank_limit, "Ranks are drawn from [0, rank-limit]");
    compare->add_flag("--pow2", pow2, "Restrict B and B - l to powers of two");
    compare->add_option("-o,--output", output, "CSV destination, '-' for stdout")->default_val("-");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    cli::ExperimentConfig config;
    try {
        if (*run || *sweep) config = cli::load_config(config_path);
        if (*compare) {
            dpapprox::ApproxMode mode{dpapprox::parse_arithmetic(mode_name), scale};
            domain.k = Ratio::from_decimal(k);
            domain.powers_of_two_only = pow2;
            Rng rng(seed);
            const auto report = dpapprox::fidelity_report(mode, trials, rng, domain);
            emit(output, [&](std::ostream& out) { cli::write_fidelity_csv(report, out); });
            return 0;
        }
        if (*trace) {
            const auto samples = cli::trace_minmax(tracking_range, packets, seed, lo, hi);
            emit(output, [&](std::ostream& out) { cli::write_minmax_csv(samples, out); });
            return 0;
        }
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }

    try {
        if (*run) {
            if (dump_config) {
                std::cout << cli::to_json(config).dump(2) << '\n';
                return 0;
            }
            emit(output.empty() ? config.output : output,
                 [&](std::ostream& out) { cli::write_run_csv(config, out); });
            return 0;
        }
        cli::SweepOptions options;
        options.jobs = jobs;
        if (!output.empty()) options.output = cli::resolve_output(output);
        const auto executed = cli::run_sweep(config, options);
        std::cerr << fmt::format("sweep: {} of {} runs executed\n", executed, cli::sweep_keys(config).size());
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
