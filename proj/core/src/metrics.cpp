#include "nacksim/metrics.hpp"

#include <sstream>

namespace nacksim {

Metrics::Series& Metrics::series(const std::string& node, const std::string& metric) {
    return series_[node][metric];
}

void Metrics::inc(const std::string& node, const std::string& metric, SimTime now,
                  std::int64_t delta) {
    Series& s = series(node, metric);
    std::size_t idx = bucket_index(now);
    if (s.buckets.size() <= idx)
        s.buckets.resize(idx + 1, 0);
    s.buckets[idx] += delta;
    s.total += delta;
}

void Metrics::sample(const std::string& node, const std::string& metric, SimTime now,
                     SimTime value) {
    inc(node, metric + "_sum_us", now, value);
    inc(node, metric + "_count", now, 1);
}

void Metrics::set_summary(const std::string& node, const std::string& metric,
                          std::int64_t value) {
    summary_[node][metric] = value;
}

std::int64_t Metrics::total(const std::string& node, const std::string& metric) const {
    auto nit = series_.find(node);
    if (nit == series_.end())
        return 0;
    auto mit = nit->second.find(metric);
    return mit == nit->second.end() ? 0 : mit->second.total;
}

std::int64_t Metrics::summary_value(const std::string& node, const std::string& metric) const {
    auto nit = summary_.find(node);
    if (nit == summary_.end())
        return 0;
    auto mit = nit->second.find(metric);
    return mit == nit->second.end() ? 0 : mit->second;
}

double Metrics::mean_sample(const std::string& node, const std::string& metric) const {
    std::int64_t count = total(node, metric + "_count");
    if (count == 0)
        return 0.0;
    return static_cast<double>(total(node, metric + "_sum_us")) / static_cast<double>(count);
}

double Metrics::mean_sample_window(const std::string& node, const std::string& metric,
                                   SimTime from, SimTime to) const {
    auto nit = series_.find(node);
    if (nit == series_.end())
        return 0.0;
    auto sum_it = nit->second.find(metric + "_sum_us");
    auto cnt_it = nit->second.find(metric + "_count");
    if (sum_it == nit->second.end() || cnt_it == nit->second.end())
        return 0.0;
    std::int64_t sum = 0, count = 0;
    const auto& sums = sum_it->second.buckets;
    const auto& counts = cnt_it->second.buckets;
    for (std::size_t i = 0; i < sums.size(); ++i) {
        SimTime start = static_cast<SimTime>(i) * bucket_width_;
        if (start < from || start >= to)
            continue;
        sum += sums[i];
        if (i < counts.size())
            count += counts[i];
    }
    return count == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(count);
}

std::string Metrics::series_csv() const {
    std::ostringstream out;
    out << "time,node,metric,value\n";
    // Deterministic order: node, metric, then time.
    for (const auto& [node, metrics] : series_) {
        for (const auto& [metric, s] : metrics) {
            for (std::size_t i = 0; i < s.buckets.size(); ++i) {
                if (s.buckets[i] == 0)
                    continue;
                out << (static_cast<SimTime>(i) * bucket_width_ / kUsPerSec) << ',' << node << ','
                    << metric << ',' << s.buckets[i] << '\n';
            }
        }
    }
    return out.str();
}

std::string Metrics::summary_csv() const {
    std::ostringstream out;
    out << "node,metric,value\n";
    for (const auto& [node, metrics] : series_)
        for (const auto& [metric, s] : metrics)
            out << node << ',' << metric << ',' << s.total << '\n';
    for (const auto& [node, metrics] : summary_)
        for (const auto& [metric, v] : metrics)
            out << node << ',' << metric << ',' << v << '\n';
    return out.str();
}

} // namespace nacksim
