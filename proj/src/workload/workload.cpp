#include "rifo/workload/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

namespace rifo {

CdfParseError::CdfParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

EmpiricalCdf parse_cdf(std::istream& in, const std::string& source_name) {
    EmpiricalCdf cdf;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream fields(raw);
        std::string size_tok;
        std::string prob_tok;
        if (!(fields >> size_tok)) continue;  // blank or comment-only
        std::string extra;
        if (!(fields >> prob_tok) || (fields >> extra)) {
            throw CdfParseError(source_name, line_no, "expected exactly two fields: size_bytes cumulative_prob");
        }
        CdfPoint p;
        try {
            std::size_t used = 0;
            if (size_tok.front() == '-') throw std::invalid_argument("negative");
            p.size_bytes = std::stoull(size_tok, &used);
            if (used != size_tok.size()) throw std::invalid_argument("trailing");
            p.cumulative = std::stod(prob_tok, &used);
            if (used != prob_tok.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw CdfParseError(source_name, line_no, "unparsable number");
        }
        if (p.size_bytes == 0) throw CdfParseError(source_name, line_no, "size must be positive");
        if (!(p.cumulative > 0.0) || p.cumulative > 1.0) {
            throw CdfParseError(source_name, line_no, "cumulative probability must be in (0, 1]");
        }
        if (!cdf.points.empty()) {
            const auto& prev = cdf.points.back();
            if (p.size_bytes <= prev.size_bytes || p.cumulative <= prev.cumulative) {
                throw CdfParseError(source_name, line_no, "points must increase strictly in both columns");
            }
        }
        cdf.points.push_back(p);
    }
    if (cdf.points.empty()) throw CdfParseError(source_name, line_no, "no CDF points");
    if (cdf.points.back().cumulative != 1.0) {
        throw CdfParseError(source_name, line_no, "final cumulative probability must be 1.0");
    }
    return cdf;
}

EmpiricalCdf load_cdf_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CdfParseError(path.string(), 0, "cannot open file");
    return parse_cdf(in, path.string());
}

ParetoSizes ParetoSizes::with_mean(double shape, double mean_bytes, std::uint64_t max_bytes) {
    if (!(shape > 1.0)) throw std::invalid_argument("pareto: deriving scale from a mean needs shape > 1");
    if (!(mean_bytes > 0.0)) throw std::invalid_argument("pareto: mean must be positive");
    return {shape, mean_bytes * (shape - 1.0) / shape, max_bytes};
}

namespace {

struct Validator {
    void operator()(const EmpiricalCdf& c) const {
        if (c.points.empty()) throw std::invalid_argument("cdf: no points");
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            if (c.points[i].size_bytes <= c.points[i - 1].size_bytes ||
                c.points[i].cumulative <= c.points[i - 1].cumulative) {
                throw std::invalid_argument("cdf: points must increase strictly");
            }
        }
        if (c.points.front().cumulative <= 0.0 || c.points.back().cumulative != 1.0) {
            throw std::invalid_argument("cdf: probabilities must lie in (0, 1] and end at 1");
        }
    }
    void operator()(const ParetoSizes& p) const {
        if (!(p.shape > 0.0)) throw std::invalid_argument("pareto: shape must be > 0");
        if (!(p.scale > 0.0)) throw std::invalid_argument("pareto: scale must be > 0");
        if (p.max_bytes == 0) throw std::invalid_argument("pareto: max_bytes must be > 0");
    }
    void operator()(const UniformSizes& u) const {
        if (u.lo == 0 || u.lo > u.hi) throw std::invalid_argument("uniform: need 1 <= lo <= hi");
    }
};

std::uint64_t round_bytes(double v) {
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(v)));
}

}  // namespace

void validate(const FlowSizeDistribution& dist) { std::visit(Validator{}, dist); }

std::uint64_t flow_size_at(const FlowSizeDistribution& dist, double u) {
    if (!(u > 0.0) || u > 1.0) throw std::domain_error("flow_size_at: u must be in (0, 1]");
    if (const auto* c = std::get_if<EmpiricalCdf>(&dist)) {
        const auto& pts = c->points;
        const auto it = std::lower_bound(pts.begin(), pts.end(), u,
                                         [](const CdfPoint& p, double v) { return p.cumulative < v; });
        if (it == pts.begin()) return pts.front().size_bytes;
        if (it == pts.end()) return pts.back().size_bytes;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double frac = (u - lo.cumulative) / (hi.cumulative - lo.cumulative);
        return round_bytes(static_cast<double>(lo.size_bytes) +
                           frac * static_cast<double>(hi.size_bytes - lo.size_bytes));
    }
    if (const auto* p = std::get_if<ParetoSizes>(&dist)) {
        const double v = p->scale / std::pow(u, 1.0 / p->shape);
        return std::min(round_bytes(v), p->max_bytes);
    }
    const auto& un = std::get<UniformSizes>(dist);
    const auto span = static_cast<double>(un.hi - un.lo + 1);
    const auto offset = static_cast<std::uint64_t>(std::ceil(u * span)) - 1;
    return un.lo + std::min(offset, un.hi - un.lo);
}

std::uint64_t sample_flow_size(const FlowSizeDistribution& dist, Rng& rng) {
    if (const auto* un = std::get_if<UniformSizes>(&dist)) return rng.uniform_int(un->lo, un->hi);
    return flow_size_at(dist, rng.uniform_open_closed());
}

double mean_flow_size(const FlowSizeDistribution& dist) {
    if (const auto* c = std::get_if<EmpiricalCdf>(&dist)) {
        const auto& pts = c->points;
        double mean = pts.front().cumulative * static_cast<double>(pts.front().size_bytes);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const double mass = pts[i].cumulative - pts[i - 1].cumulative;
            mean += mass * 0.5 * static_cast<double>(pts[i].size_bytes + pts[i - 1].size_bytes);
        }
        return mean;
    }
    if (const auto* p = std::get_if<ParetoSizes>(&dist)) {
        // E[min(X, M)] = scale + integral_{scale}^{M} (scale / x)^shape dx
        const double s = p->scale;
        const double m = static_cast<double>(p->max_bytes);
        const double a = p->shape;
        if (m <= s) return m;
        if (std::abs(a - 1.0) < 1e-12) return s + s * std::log(m / s);
        return s + std::pow(s, a) * (std::pow(m, 1.0 - a) - std::pow(s, 1.0 - a)) / (1.0 - a);
    }
    const auto& un = std::get<UniformSizes>(dist);
    return 0.5 * static_cast<double>(un.lo + un.hi);
}

double arrival_rate_per_host(double load, std::uint64_t access_bps, double mean_size_bytes) {
    if (!(load > 0.0) || load > 1.0) throw std::invalid_argument("load must be in (0, 1]");
    if (!(mean_size_bytes > 0.0)) throw std::invalid_argument("mean flow size must be positive");
    return load * static_cast<double>(access_bps) / (8.0 * mean_size_bytes);
}

std::vector<FlowRecord> generate_arrivals(const ArrivalSpec& spec, const FlowSizeDistribution& dist, Rng& rng) {
    validate(dist);
    if (spec.host_count < 2) throw std::invalid_argument("generate_arrivals: need at least 2 hosts");
    const double rate_per_ns = arrival_rate_per_host(spec.load, spec.access_bps, mean_flow_size(dist)) * 1e-9;

    std::vector<FlowRecord> flows;
    for (HostId src = 0; src < spec.host_count; ++src) {
        Rng host_rng = rng.split(src);
        double t = 0.0;
        for (;;) {
            t += host_rng.exponential(rate_per_ns);
            const auto arrival = static_cast<SimTime>(std::floor(t));
            if (arrival >= spec.horizon_ns) break;
            FlowRecord f;
            f.src_host = src;
            auto dst = static_cast<HostId>(host_rng.uniform_int(0, spec.host_count - 2));
            if (dst >= src) ++dst;
            f.dst_host = dst;
            f.size_bytes = sample_flow_size(dist, host_rng);
            f.arrival_time = arrival;
            flows.push_back(f);
        }
    }
    std::stable_sort(flows.begin(), flows.end(), [](const FlowRecord& a, const FlowRecord& b) {
        return std::tie(a.arrival_time, a.src_host) < std::tie(b.arrival_time, b.src_host);
    });
    for (std::size_t i = 0; i < flows.size(); ++i) flows[i].flow_id = i;
    return flows;
}

}  // namespace rifo
