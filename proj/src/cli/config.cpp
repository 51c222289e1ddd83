#include "rifo/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <thread>

namespace rifo::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown key");
    }
}

const json* child(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& object_at(const json& obj, const char* key, const std::string& path, const json& empty) {
    const json* v = child(obj, key);
    if (!v) return empty;
    if (!v->is_object()) throw ConfigError(join(path, key), "expected an object");
    return *v;
}

bool non_negative_integer(const json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

template <typename T>
void read_uint(const json& obj, const char* key, const std::string& path, T& out, std::uint64_t min_value) {
    const json* v = child(obj, key);
    if (!v) return;
    const std::string field = join(path, key);
    if (!non_negative_integer(*v)) {
        throw ConfigError(field, "expected a non-negative integer");
    }
    const auto raw = v->get<std::uint64_t>();
    if (raw < min_value) throw ConfigError(field, "must be >= " + std::to_string(min_value) + ", got " + std::to_string(raw));
    if (raw > std::numeric_limits<T>::max()) throw ConfigError(field, "value too large");
    out = static_cast<T>(raw);
}

void read_double(const json& obj, const char* key, const std::string& path, double& out) {
    const json* v = child(obj, key);
    if (!v) return;
    if (!v->is_number()) throw ConfigError(join(path, key), "expected a number");
    out = v->get<double>();
}

void read_string(const json& obj, const char* key, const std::string& path, std::string& out) {
    const json* v = child(obj, key);
    if (!v) return;
    if (!v->is_string()) throw ConfigError(join(path, key), "expected a string");
    out = v->get<std::string>();
}

Ratio read_fraction(const json& v, const std::string& field) {
    if (v.is_number()) return Ratio::from_decimal(v.get<double>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        const auto slash = s.find('/');
        std::int64_t num = 0;
        std::int64_t den = 1;
        const char* b = s.data();
        const char* e = s.data() + s.size();
        bool ok = false;
        if (slash == std::string::npos) {
            ok = std::from_chars(b, e, num).ptr == e;
        } else {
            ok = std::from_chars(b, b + slash, num).ptr == b + slash &&
                 std::from_chars(b + slash + 1, e, den).ptr == e && den > 0;
        }
        if (ok) return Ratio(num, den).reduced();
    }
    throw ConfigError(field, "expected a number or an \"a/b\" fraction");
}

template <typename F>
auto with_field(const std::string& field, F&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(field, e.what());
    }
}

std::string host_queue_name(netsim::HostQueue q) { return q == netsim::HostQueue::Fifo ? "fifo" : "rank"; }

}  // namespace

std::vector<netsim::SchedulerKind> ExperimentConfig::sweep_schedulers() const {
    return schedulers.empty() ? std::vector<netsim::SchedulerKind>{scheduler.kind} : schedulers;
}

netsim::TransportConfig ExperimentConfig::transport() const {
    auto t = netsim::default_transport(topology);
    if (window_packets) t.window_packets = *window_packets;
    if (retransmit_delay_ns) t.retransmit_delay_ns = *retransmit_delay_ns;
    return t;
}

SimTime ExperimentConfig::effective_until() const { return until_ns ? *until_ns : 4 * workload.horizon_ns; }

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
    reject_unknown(doc, "", {"topology", "scheduler", "schedulers", "policy", "workload", "seeds", "transport",
                             "simulation", "metrics", "output", "jobs"});
    const json empty = json::object();
    ExperimentConfig c;
    c.base_dir = base_dir;

    const json& topo = object_at(doc, "topology", "", empty);
    reject_unknown(topo, "topology", {"leaf_count", "spine_count", "hosts_per_leaf", "access_bps", "core_bps", "link_delay_ns"});
    read_uint(topo, "leaf_count", "topology", c.topology.leaf_count, 1);
    read_uint(topo, "spine_count", "topology", c.topology.spine_count, 1);
    read_uint(topo, "hosts_per_leaf", "topology", c.topology.hosts_per_leaf, 1);
    read_uint(topo, "access_bps", "topology", c.topology.access_bps, 1);
    read_uint(topo, "core_bps", "topology", c.topology.core_bps, 1);
    read_uint(topo, "link_delay_ns", "topology", c.topology.link_delay_ns, 0);
    with_field("topology", [&] { c.topology.validate(); return 0; });

    const json& sched = object_at(doc, "scheduler", "", empty);
    reject_unknown(sched, "scheduler", {"kind", "B", "T", "k", "W", "n_queues", "arithmetic", "scale_by_guaranteed_buffer"});
    if (const json* v = child(sched, "kind")) {
        if (!v->is_string()) throw ConfigError("scheduler.kind", "expected a string");
        c.scheduler.kind = with_field("scheduler.kind", [&] { return netsim::parse_scheduler(v->get<std::string>()); });
    }
    read_uint(sched, "B", "scheduler", c.scheduler.capacity, 1);
    read_uint(sched, "T", "scheduler", c.scheduler.tracking_range, 1);
    read_uint(sched, "W", "scheduler", c.scheduler.window, 1);
    read_uint(sched, "n_queues", "scheduler", c.scheduler.queue_count, 2);
    if (const json* v = child(sched, "k")) {
        c.scheduler.guaranteed_fraction = read_fraction(*v, "scheduler.k");
        if (c.scheduler.guaranteed_fraction < Ratio(0, 1) || c.scheduler.guaranteed_fraction >= Ratio(1, 1)) {
            throw ConfigError("scheduler.k", "must be in [0, 1), got " + v->dump());
        }
    }
    std::string arithmetic = "rational";
    read_string(sched, "arithmetic", "scheduler", arithmetic);
    bool scaled = false;
    if (const json* v = child(sched, "scale_by_guaranteed_buffer")) {
        if (!v->is_boolean()) throw ConfigError("scheduler.scale_by_guaranteed_buffer", "expected a boolean");
        scaled = v->get<bool>();
    }
    if (arithmetic != "rational") {
        c.scheduler.arithmetic = dpapprox::ApproxMode{
            with_field("scheduler.arithmetic", [&] { return dpapprox::parse_arithmetic(arithmetic); }), scaled};
    } else if (scaled) {
        throw ConfigError("scheduler.scale_by_guaranteed_buffer", "requires arithmetic exact or shift");
    }

    if (const json* v = child(doc, "schedulers")) {
        if (!v->is_array() || v->empty()) throw ConfigError("schedulers", "expected a non-empty array of names");
        for (std::size_t i = 0; i < v->size(); ++i) {
            const std::string field = "schedulers[" + std::to_string(i) + "]";
            if (!(*v)[i].is_string()) throw ConfigError(field, "expected a string");
            c.schedulers.push_back(with_field(field, [&] { return netsim::parse_scheduler((*v)[i].get<std::string>()); }));
        }
    }

    const json& pol = object_at(doc, "policy", "", empty);
    reject_unknown(pol, "policy", {"kind", "quantum_bytes"});
    if (const json* v = child(pol, "kind")) {
        if (!v->is_string()) throw ConfigError("policy.kind", "expected a string");
        c.policy = with_field("policy.kind", [&] { return parse_policy(v->get<std::string>()); });
    }
    read_uint(pol, "quantum_bytes", "policy", c.rank_quantum, 1);

    const json& wl = object_at(doc, "workload", "", empty);
    reject_unknown(wl, "workload", {"name", "distribution", "loads", "horizon_ns"});
    read_string(wl, "name", "workload", c.workload.name);
    if (c.workload.name.find_first_of(",\n\"") != std::string::npos) {
        throw ConfigError("workload.name", "must not contain commas, quotes or newlines");
    }
    read_uint(wl, "horizon_ns", "workload", c.workload.horizon_ns, 1);
    if (const json* v = child(wl, "loads")) {
        if (!v->is_array() || v->empty()) throw ConfigError("workload.loads", "expected a non-empty array of numbers");
        c.workload.loads.clear();
        for (std::size_t i = 0; i < v->size(); ++i) {
            const std::string field = "workload.loads[" + std::to_string(i) + "]";
            if (!(*v)[i].is_number()) throw ConfigError(field, "expected a number");
            const double load = (*v)[i].get<double>();
            if (!(load > 0.0) || load > 1.0) throw ConfigError(field, "load must be in (0, 1], got " + (*v)[i].dump());
            c.workload.loads.push_back(load);
        }
    }
    const json& dist = object_at(wl, "distribution", "workload", empty);
    const std::string dp = "workload.distribution";
    reject_unknown(dist, dp, {"kind", "file", "shape", "scale", "mean_bytes", "mean_from", "max_bytes", "lo", "hi"});
    auto& d = c.workload.distribution;
    read_string(dist, "kind", dp, d.kind);
    read_string(dist, "file", dp, d.file);
    read_double(dist, "shape", dp, d.shape);
    if (const json* v = child(dist, "scale")) {
        if (!v->is_number()) throw ConfigError(dp + ".scale", "expected a number");
        d.scale = v->get<double>();
    }
    if (const json* v = child(dist, "mean_bytes")) {
        if (!v->is_number()) throw ConfigError(dp + ".mean_bytes", "expected a number");
        d.mean_bytes = v->get<double>();
    }
    read_string(dist, "mean_from", dp, d.mean_from);
    read_uint(dist, "max_bytes", dp, d.max_bytes, 1);
    read_uint(dist, "lo", dp, d.lo, 1);
    read_uint(dist, "hi", dp, d.hi, 1);
    if (d.kind == "cdf") {
        if (d.file.empty()) d.file = "data/websearch.cdf";
    } else if (d.kind == "pareto") {
        if (!(d.shape > 0.0)) throw ConfigError(dp + ".shape", "must be > 0");
        if (!d.scale && !d.mean_bytes && d.mean_from.empty()) {
            throw ConfigError(dp, "pareto needs one of scale, mean_bytes or mean_from");
        }
    } else if (d.kind == "uniform") {
        if (d.lo > d.hi) throw ConfigError(dp + ".lo", "must be <= hi");
    } else {
        throw ConfigError(dp + ".kind", "expected cdf|pareto|uniform, got '" + d.kind + "'");
    }

    if (const json* v = child(doc, "seeds")) {
        if (!v->is_array() || v->empty()) throw ConfigError("seeds", "expected a non-empty array of integers");
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (!non_negative_integer((*v)[i])) throw ConfigError("seeds[" + std::to_string(i) + "]", "expected a non-negative integer");
        }
        c.seeds = v->get<std::vector<std::uint64_t>>();
    }

    const json& tr = object_at(doc, "transport", "", empty);
    reject_unknown(tr, "transport", {"window_packets", "retransmit_delay_ns"});
    if (child(tr, "window_packets")) {
        std::uint32_t w = 1;
        read_uint(tr, "window_packets", "transport", w, 1);
        c.window_packets = w;
    }
    if (child(tr, "retransmit_delay_ns")) {
        std::uint64_t r = 0;
        read_uint(tr, "retransmit_delay_ns", "transport", r, 0);
        c.retransmit_delay_ns = static_cast<SimTime>(r);
    }

    const json& sim = object_at(doc, "simulation", "", empty);
    reject_unknown(sim, "simulation", {"until_ns", "host_queue"});
    if (child(sim, "until_ns")) {
        std::uint64_t u = 0;
        read_uint(sim, "until_ns", "simulation", u, 1);
        c.until_ns = static_cast<SimTime>(u);
    }
    std::string hq = "rank";
    read_string(sim, "host_queue", "simulation", hq);
    if (hq == "rank") {
        c.host_queue = netsim::HostQueue::RankOrdered;
    } else if (hq == "fifo") {
        c.host_queue = netsim::HostQueue::Fifo;
    } else {
        throw ConfigError("simulation.host_queue", "expected rank|fifo, got '" + hq + "'");
    }

    const json& met = object_at(doc, "metrics", "", empty);
    reject_unknown(met, "metrics", {"classes"});
    if (const json* v = child(met, "classes")) {
        if (!v->is_array() || v->empty()) throw ConfigError("metrics.classes", "expected a non-empty array");
        c.classes.clear();
        for (std::size_t i = 0; i < v->size(); ++i) {
            const std::string field = "metrics.classes[" + std::to_string(i) + "]";
            if (!(*v)[i].is_string()) throw ConfigError(field, "expected a string");
            c.classes.push_back(with_field(field, [&] { return parse_flow_class((*v)[i].get<std::string>()); }));
        }
    }

    read_string(doc, "output", "", c.output);
    if (c.output.empty()) throw ConfigError("output", "must not be empty");
    read_uint(doc, "jobs", "", c.jobs, 0);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("parse error in ") + path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["topology"] = {{"leaf_count", c.topology.leaf_count},     {"spine_count", c.topology.spine_count},
                     {"hosts_per_leaf", c.topology.hosts_per_leaf}, {"access_bps", c.topology.access_bps},
                     {"core_bps", c.topology.core_bps},         {"link_delay_ns", c.topology.link_delay_ns}};
    const Ratio k = c.scheduler.guaranteed_fraction.reduced();
    j["scheduler"] = {{"kind", std::string(netsim::to_string(c.scheduler.kind))},
                      {"B", c.scheduler.capacity},
                      {"T", c.scheduler.tracking_range},
                      {"k", k.to_string()},
                      {"W", c.scheduler.window},
                      {"n_queues", c.scheduler.queue_count},
                      {"arithmetic", c.scheduler.arithmetic ? std::string(dpapprox::to_string(c.scheduler.arithmetic->arithmetic))
                                                            : std::string("rational")},
                      {"scale_by_guaranteed_buffer",
                       c.scheduler.arithmetic ? c.scheduler.arithmetic->scale_by_guaranteed_buffer : false}};
    j["schedulers"] = json::array();
    for (auto s : c.sweep_schedulers()) j["schedulers"].push_back(std::string(netsim::to_string(s)));
    j["policy"] = {{"kind", std::string(to_string(c.policy))}, {"quantum_bytes", c.rank_quantum}};
    const auto& d = c.workload.distribution;
    json dist = {{"kind", d.kind}};
    if (d.kind == "cdf") {
        dist["file"] = d.file;
    } else if (d.kind == "pareto") {
        dist["shape"] = d.shape;
        if (d.scale) dist["scale"] = *d.scale;
        if (d.mean_bytes) dist["mean_bytes"] = *d.mean_bytes;
        if (!d.mean_from.empty()) dist["mean_from"] = d.mean_from;
        dist["max_bytes"] = d.max_bytes;
    } else {
        dist["lo"] = d.lo;
        dist["hi"] = d.hi;
    }
    j["workload"] = {{"name", c.workload.name},
                     {"distribution", dist},
                     {"loads", c.workload.loads},
                     {"horizon_ns", c.workload.horizon_ns}};
    j["seeds"] = c.seeds;
    const auto t = c.transport();
    j["transport"] = {{"window_packets", t.window_packets}, {"retransmit_delay_ns", t.retransmit_delay_ns}};
    j["simulation"] = {{"until_ns", c.effective_until()}, {"host_queue", host_queue_name(c.host_queue)}};
    j["metrics"]["classes"] = json::array();
    for (auto cl : c.classes) j["metrics"]["classes"].push_back(std::string(to_string(cl)));
    j["output"] = c.output;
    j["jobs"] = c.jobs;
    return j;
}

FlowSizeDistribution build_distribution(const ExperimentConfig& c) {
    const auto& d = c.workload.distribution;
    const std::string dp = "workload.distribution";
    auto resolve = [&](const std::string& p) {
        const std::filesystem::path path(p);
        return path.is_absolute() ? path : c.base_dir / path;
    };
    FlowSizeDistribution dist;
    if (d.kind == "cdf") {
        dist = with_field(dp + ".file", [&] { return load_cdf_file(resolve(d.file)); });
    } else if (d.kind == "pareto") {
        if (d.scale) {
            dist = ParetoSizes{d.shape, *d.scale, d.max_bytes};
        } else {
            const double mean = d.mean_bytes ? *d.mean_bytes : with_field(dp + ".mean_from", [&] {
                return mean_flow_size(load_cdf_file(resolve(d.mean_from)));
            });
            dist = with_field(dp, [&] { return ParetoSizes::with_mean(d.shape, mean, d.max_bytes); });
        }
    } else {
        dist = UniformSizes{d.lo, d.hi};
    }
    with_field(dp, [&] { validate(dist); return 0; });
    return dist;
}

}  // namespace rifo::cli
