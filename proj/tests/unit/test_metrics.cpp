#include "rifo/core/rng.hpp"
#include "rifo/metrics/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace rifo;

namespace {

FlowRecord done(std::uint64_t size, SimTime fct, FlowId id = 0) {
    FlowRecord f;
    f.flow_id = id;
    f.src_host = 0;
    f.dst_host = 1;
    f.size_bytes = size;
    f.arrival_time = 1000;
    f.completion_time = 1000 + fct;
    return f;
}

}  // namespace

TEST(FlowClass, Thresholds) {
    EXPECT_EQ(classify(99'999), FlowClass::Small);
    EXPECT_EQ(classify(100'000), FlowClass::Medium);
    EXPECT_EQ(classify(999'999), FlowClass::Medium);
    EXPECT_EQ(classify(1'000'000), FlowClass::Large);
    EXPECT_TRUE(in_class(5, FlowClass::All));
    EXPECT_EQ(parse_flow_class("large"), FlowClass::Large);
    EXPECT_THROW(parse_flow_class("tiny"), std::invalid_argument);
}

TEST(FctStats, Mean) {
    const std::vector<FlowRecord> f{done(10, 10), done(10, 20), done(10, 30)};
    const auto s = fct_stats(f, FlowClass::Small);
    EXPECT_EQ(s.count, 3U);
    EXPECT_DOUBLE_EQ(*s.mean_ns, 20.0);
}

TEST(FctStats, NearestRankP99) {
    std::vector<FlowRecord> f;
    for (SimTime t = 100; t >= 1; --t) f.push_back(done(10, t));
    EXPECT_EQ(*fct_stats(f, FlowClass::Small).p99_ns, 99);
}

TEST(FctStats, Singleton) {
    const std::vector<FlowRecord> f{done(10, 42)};
    const auto s = fct_stats(f, FlowClass::Small);
    EXPECT_DOUBLE_EQ(*s.mean_ns, 42.0);
    EXPECT_EQ(*s.p99_ns, 42);
}

TEST(FctStats, EmptyClassHasNoStatistics) {
    const std::vector<FlowRecord> f{done(10, 42)};
    const auto s = fct_stats(f, FlowClass::Large);
    EXPECT_EQ(s.count, 0U);
    EXPECT_FALSE(s.mean_ns);
    EXPECT_FALSE(s.p99_ns);
}

TEST(FctStats, UnfinishedFlowsAreSkippedAndCounted) {
    std::vector<FlowRecord> f{done(10, 42), done(10, 8)};
    f[1].completion_time.reset();
    EXPECT_EQ(fct_stats(f, FlowClass::All).count, 1U);
    EXPECT_EQ(unfinished_count(f), 1U);
}

TEST(FctStats, MeanAndP99LieBetweenExtremes) {
    Rng rng(3);
    std::vector<FlowRecord> f;
    for (int i = 0; i < 777; ++i) f.push_back(done(10, static_cast<SimTime>(rng.uniform_int(1, 1'000'000))));
    const auto s = fct_stats(f, FlowClass::All);
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end(), [](auto& a, auto& b) { return a.fct() < b.fct(); });
    EXPECT_LE(static_cast<double>(*lo->fct()), *s.mean_ns);
    EXPECT_LE(*s.mean_ns, static_cast<double>(*hi->fct()));
    EXPECT_LE(*lo->fct(), *s.p99_ns);
    EXPECT_LE(*s.p99_ns, *hi->fct());
}

TEST(Percentile, Validation) {
    const std::vector<SimTime> v{3, 1, 2};
    EXPECT_EQ(nearest_rank_percentile(v, 100), 3);
    EXPECT_EQ(nearest_rank_percentile(v, 1), 1);
    EXPECT_THROW(nearest_rank_percentile({}, 50), std::invalid_argument);
    EXPECT_THROW(nearest_rank_percentile(v, 0), std::invalid_argument);
}

TEST(Throughput, Examples) {
    const std::vector<FlowRecord> one{done(1'000'000, 8'000'000)};
    EXPECT_DOUBLE_EQ(*large_flow_throughput(one), 1e9);
    const std::vector<FlowRecord> two{done(1'000'000, 8'000'000), done(1'000'000, 8'000'000)};
    EXPECT_DOUBLE_EQ(*large_flow_throughput(two), 1e9);
    const std::vector<FlowRecord> slow{done(1'000'000, 16'000'000)};
    EXPECT_DOUBLE_EQ(*large_flow_throughput(slow), 0.5e9);
    const std::vector<FlowRecord> small{done(1000, 10)};
    EXPECT_FALSE(large_flow_throughput(small));
    EXPECT_FALSE(large_flow_throughput({}));
}
