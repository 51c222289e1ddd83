#include "rifo/cli/config.hpp"
#include "rifo/cli/experiment.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rifo;
using namespace rifo::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kSourceDir = RIFO_SOURCE_DIR;
const std::string kSimBin = RIFO_SIM_BIN;

json small_config() {
    return json::parse(R"({
        "scheduler": {"kind": "rifo"},
        "workload": {"distribution": {"kind": "cdf", "file": "data/websearch.cdf"},
                     "loads": [0.5], "horizon_ns": 20000000},
        "seeds": [1]
    })");
}

ExperimentConfig parse(const json& j) { return parse_config(j, kSourceDir); }

std::string field_of(const json& j) {
    try {
        parse(j);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<accepted>";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("rifo_cli_" + std::to_string(counter_++) + "_" +
                                             std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

int run_cli(const std::string& args) {
    const int status = std::system((kSimBin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, DefaultsMirrorReferenceSetup) {
    const auto c = parse_config(json::object(), kSourceDir);
    EXPECT_EQ(c.scheduler.kind, netsim::SchedulerKind::Rifo);
    EXPECT_EQ(c.scheduler.capacity, 20U);
    EXPECT_EQ(c.scheduler.tracking_range, 50U);
    EXPECT_EQ(c.scheduler.guaranteed_fraction, Ratio(1, 10));
    EXPECT_EQ(c.scheduler.window, 50U);
    EXPECT_EQ(c.scheduler.queue_count, 8U);
    EXPECT_EQ(c.policy, PolicyKind::Srpt);
    EXPECT_EQ(c.rank_quantum, kMtuBytes);
    EXPECT_EQ(c.topology.host_count(), 8U);
}

TEST(Config, FieldLevelErrors) {
    auto j = small_config();
    j["scheduler"]["k"] = 1.2;
    EXPECT_EQ(field_of(j), "scheduler.k");
    j = small_config();
    j["scheduler"]["B"] = 0;
    EXPECT_EQ(field_of(j), "scheduler.B");
    j = small_config();
    j["scheduler"]["T"] = 0;
    EXPECT_EQ(field_of(j), "scheduler.T");
    j = small_config();
    j["workload"]["loads"] = {0.5, 1.5};
    EXPECT_EQ(field_of(j), "workload.loads[1]");
    j = small_config();
    j["scheduler"]["kind"] = "wfq";
    EXPECT_EQ(field_of(j), "scheduler.kind");
    j = small_config();
    j["scheduler"]["tracking"] = 5;
    EXPECT_EQ(field_of(j), "scheduler.tracking");
    j = small_config();
    j["topology"] = {{"core_bps", 0}};
    EXPECT_EQ(field_of(j), "topology.core_bps");
    j = small_config();
    j["workload"]["distribution"]["file"] = "data/nope.cdf";
    EXPECT_THROW(build_distribution(parse(j)), ConfigError);
}

TEST(Config, FractionsAcceptedAsStrings) {
    auto j = small_config();
    j["scheduler"]["k"] = "1/4";
    EXPECT_EQ(parse(j).scheduler.guaranteed_fraction, Ratio(1, 4));
    j["scheduler"]["k"] = "3/2";
    EXPECT_EQ(field_of(j), "scheduler.k");
}

TEST(Config, RoundTripIsIdentical) {
    auto j = small_config();
    j["schedulers"] = {"pifo", "rifo"};
    j["scheduler"]["arithmetic"] = "shift";
    j["policy"] = {{"kind", "stfq"}, {"quantum_bytes", 1}};
    const auto c = parse(j);
    const json once = to_json(c);
    const auto again = parse_config(once, kSourceDir);
    EXPECT_EQ(to_json(again), once);
    std::ostringstream a;
    std::ostringstream b;
    write_run_csv(c, a);
    write_run_csv(again, b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Run, CsvSchemaAndDeterminism) {
    const auto c = parse(small_config());
    std::ostringstream a;
    std::ostringstream b;
    write_run_csv(c, a);
    write_run_csv(c, b);
    EXPECT_EQ(a.str(), b.str());
    const auto rows = lines(a.str());
    ASSERT_EQ(rows.size(), 2U);
    EXPECT_EQ(rows[0], kResultsHeader);
    EXPECT_EQ(rows[1].rfind("rifo,srpt,websearch,0.5,1,small,", 0), 0U) << rows[1];
    EXPECT_NE(rows[1].find("B=20;T=50;k=1/10"), std::string::npos);
}

TEST(Run, EveryClassGetsARow) {
    auto j = small_config();
    j["metrics"] = {{"classes", {"small", "medium", "large", "all"}}};
    std::ostringstream out;
    write_run_csv(parse(j), out);
    EXPECT_EQ(lines(out.str()).size(), 5U);
}

TEST(Sweep, CartesianProductRowCount) {
    TempDir dir;
    auto j = small_config();
    j["schedulers"] = {"rifo", "aifo", "sppifo", "pifo", "droptail"};
    j["workload"]["loads"] = {0.2, 0.4, 0.6, 0.8};
    j["workload"]["horizon_ns"] = 5'000'000;
    j["seeds"] = {1, 2, 3};
    const auto c = parse(j);
    SweepOptions o;
    o.output = dir.path() / "sweep.csv";
    o.jobs = 3;
    EXPECT_EQ(run_sweep(c, o), 60U);
    const auto rows = lines(slurp(o.output));
    ASSERT_EQ(rows.size(), 61U);
    EXPECT_EQ(rows.front(), kResultsHeader);
    EXPECT_EQ(rows[1].rfind("aifo,srpt,websearch,0.2,1,", 0), 0U);
    EXPECT_EQ(rows.back().rfind("sppifo,srpt,websearch,0.8,3,", 0), 0U);
}

TEST(Sweep, SeedSubsetRowsAreContained) {
    TempDir dir;
    auto j = small_config();
    j["schedulers"] = {"rifo", "pifo"};
    j["workload"]["loads"] = {0.3, 0.6};
    SweepOptions o;
    o.output = dir.path() / "one.csv";
    j["seeds"] = {1};
    run_sweep(parse(j), o);
    const auto one = lines(slurp(o.output));
    o.output = dir.path() / "two.csv";
    j["seeds"] = {1, 2};
    run_sweep(parse(j), o);
    const auto two = lines(slurp(o.output));
    EXPECT_EQ(one.size(), 5U);
    EXPECT_EQ(two.size(), 9U);
    for (const auto& row : one) EXPECT_NE(std::find(two.begin(), two.end(), row), two.end()) << row;
}

TEST(Sweep, ResumedSweepMatchesFreshSweep) {
    TempDir dir;
    auto j = small_config();
    j["schedulers"] = {"rifo", "aifo", "droptail"};
    j["workload"]["loads"] = {0.3, 0.7};
    j["seeds"] = {4, 5};
    const auto c = parse(j);
    SweepOptions fresh;
    fresh.output = dir.path() / "fresh.csv";
    fresh.jobs = 1;
    run_sweep(c, fresh);

    SweepOptions resumed;
    resumed.output = dir.path() / "resumed.csv";
    resumed.jobs = 4;
    run_sweep(c, resumed);
    // Simulate an interruption: lose the merged file and some fragments.
    fs::remove(resumed.output);
    const fs::path parts = resumed.output.string() + ".parts";
    std::size_t removed = 0;
    for (const auto& key : sweep_keys(c)) {
        if (key.seed == 5) removed += fs::remove(parts / (key.id() + ".csv"));
    }
    ASSERT_EQ(removed, 6U);
    EXPECT_EQ(run_sweep(c, resumed), 6U);
    EXPECT_EQ(slurp(resumed.output), slurp(fresh.output));
    EXPECT_EQ(run_sweep(c, resumed), 0U);
    EXPECT_EQ(slurp(resumed.output), slurp(fresh.output));
}

TEST(Sweep, FailureNamesTheCombination) {
    TempDir dir;
    auto j = small_config();
    j["schedulers"] = {"rifo", "pifo"};
    const auto c = parse(j);
    SweepOptions o;
    o.output = dir.path() / "out.csv";
    const fs::path parts = o.output.string() + ".parts";
    const RunKey bad{netsim::SchedulerKind::Pifo, 0.5, 1};
    fs::create_directories(parts / (bad.id() + ".csv.tmp"));  // blocks the fragment write
    try {
        run_sweep(c, o);
        FAIL() << "sweep should fail";
    } catch (const SweepError& e) {
        EXPECT_EQ(e.key().id(), bad.id());
        EXPECT_NE(std::string(e.what()).find("pifo_load0.5_seed1"), std::string::npos);
    }
    EXPECT_FALSE(fs::exists(o.output));
}

TEST(TraceMinmax, RegistersStayInRange) {
    const auto s = trace_minmax(50, 5000, 3);
    ASSERT_EQ(s.size(), 5000U);
    for (const auto& x : s) {
        ASSERT_LE(x.min, x.max);
        ASSERT_LE(x.max, 100U);
    }
    const auto constant = trace_minmax(7, 100, 3, 42, 42);
    for (const auto& x : constant) {
        ASSERT_EQ(x.min, 42U);
        ASSERT_EQ(x.max, 42U);
    }
    EXPECT_THROW(trace_minmax(100, 99, 1), std::invalid_argument);
}

TEST(TraceMinmax, CsvFormat) {
    std::ostringstream out;
    write_minmax_csv(trace_minmax(2, 3, 1, 5, 5), out);
    EXPECT_EQ(out.str(), "packet_index,sampled_min,sampled_max\n0,5,5\n1,5,5\n2,5,5\n");
}

TEST(OutputDir, EnvironmentOverridesRelativePaths) {
    ::setenv("RIFO_OUTPUT_DIR", "/tmp/rifo-out", 1);
    EXPECT_EQ(resolve_output("a.csv"), fs::path("/tmp/rifo-out/a.csv"));
    EXPECT_EQ(resolve_output("/abs/a.csv"), fs::path("/abs/a.csv"));
    ::unsetenv("RIFO_OUTPUT_DIR");
    EXPECT_EQ(resolve_output("a.csv"), fs::path("a.csv"));
}

TEST(Binary, ExitCodes) {
    TempDir dir;
    const auto write = [&](const std::string& name, const json& j) {
        std::ofstream(dir.path() / name) << j.dump();
        return (dir.path() / name).string();
    };
    auto good = small_config();
    good["workload"]["distribution"]["file"] = (kSourceDir / "data/websearch.cdf").string();
    const auto good_path = write("good.json", good);
    auto bad = good;
    bad["scheduler"]["k"] = 1.2;
    const auto bad_path = write("bad.json", bad);

    const auto out = (dir.path() / "run.csv").string();
    EXPECT_EQ(run_cli("run " + good_path + " --output " + out), 0);
    EXPECT_EQ(lines(slurp(out)).size(), 2U);
    EXPECT_EQ(run_cli("run " + bad_path), 1);
    EXPECT_EQ(run_cli("run " + (dir.path() / "missing.json").string()), 1);
    EXPECT_EQ(run_cli("frobnicate"), 1);
    EXPECT_EQ(run_cli("run " + good_path + " --output /proc/rifo/run.csv"), 2);
    EXPECT_EQ(run_cli("trace-minmax --T 10 --packets 5 --seed 1"), 1);

    const auto fid = (dir.path() / "fid.csv").string();
    EXPECT_EQ(run_cli("compare-approx --mode exact --trials 1000 --seed 1 --output " + fid), 0);
    EXPECT_EQ(slurp(fid), "mode,trials,agreement,false_admit,false_drop\nexact,1000,1.000000,0,0\n");

    const auto env_cmd = "RIFO_OUTPUT_DIR=" + dir.path().string() + " " + kSimBin +
                         " trace-minmax --T 10 --packets 20 --seed 1 --output trace.csv >/dev/null 2>&1";
    EXPECT_EQ(std::system(env_cmd.c_str()), 0);
    EXPECT_EQ(lines(slurp(dir.path() / "trace.csv")).size(), 21U);
}

TEST(Binary, DumpedConfigReloads) {
    TempDir dir;
    const auto cfg = (kSourceDir / "configs/default.json").string();
    const auto dumped = dir.path() / "effective.json";
    ASSERT_EQ(std::system((kSimBin + " run " + cfg + " --dump-config > " + dumped.string()).c_str()), 0);
    const auto original = load_config(cfg);
    std::ifstream in(dumped);
    const auto reloaded = parse_config(json::parse(in), original.base_dir);
    EXPECT_EQ(to_json(reloaded), to_json(original));
}
