#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nacksim/time.hpp"

namespace nacksim {

// Log-scale histogram for delay quantiles; ~7% bin resolution.
class DelayHistogram {
public:
    void record(SimTime v) {
        double x = static_cast<double>(v < 0 ? 0 : v);
        std::size_t bin = static_cast<std::size_t>(std::log1p(x) * 14.0);
        if (bin >= bins_.size())
            bin = bins_.size() - 1;
        ++bins_[bin];
        ++count_;
    }
    SimTime quantile(double q) const {
        if (count_ == 0)
            return 0;
        std::int64_t target = static_cast<std::int64_t>(q * static_cast<double>(count_));
        std::int64_t seen = 0;
        for (std::size_t i = 0; i < bins_.size(); ++i) {
            seen += bins_[i];
            if (seen > target)
                return static_cast<SimTime>(std::expm1(static_cast<double>(i + 1) / 14.0));
        }
        return static_cast<SimTime>(std::expm1(static_cast<double>(bins_.size()) / 14.0));
    }
    std::int64_t count() const { return count_; }

private:
    std::array<std::int64_t, 512> bins_{};
    std::int64_t count_ = 0;
};

// Time-bucketed counters plus whole-run summary values. All stored values are
// integers (delays are accumulated as microsecond sums plus sample counts) so
// report bytes are exactly reproducible.
class Metrics {
public:
    struct Series {
        std::vector<std::int64_t> buckets;
        std::int64_t total = 0;
    };

    // Cheap hot-path handle bound to one (node, metric) series.
    class Counter {
    public:
        Counter() = default;
        void add(SimTime now, std::int64_t delta = 1) {
            std::size_t idx = static_cast<std::size_t>(now / width_);
            if (s_->buckets.size() <= idx)
                s_->buckets.resize(idx + 1, 0);
            s_->buckets[idx] += delta;
            s_->total += delta;
        }
        std::int64_t total() const { return s_->total; }

    private:
        friend class Metrics;
        Counter(Series* s, SimTime width) : s_(s), width_(width) {}
        Series* s_ = nullptr;
        SimTime width_ = kUsPerSec;
    };

    struct Sampler {
        Counter sum;
        Counter count;
        void record(SimTime now, SimTime value) {
            sum.add(now, value);
            count.add(now, 1);
        }
    };

    explicit Metrics(SimTime bucket_width = kUsPerSec) : bucket_width_(bucket_width) {}

    Counter handle(const std::string& node, const std::string& metric) {
        return Counter(&series(node, metric), bucket_width_);
    }
    Sampler sample_handle(const std::string& node, const std::string& metric) {
        return Sampler{handle(node, metric + "_sum_us"), handle(node, metric + "_count")};
    }

    void inc(const std::string& node, const std::string& metric, SimTime now,
             std::int64_t delta = 1);
    // Records a delay/duration sample: <metric>_sum_us and <metric>_count.
    void sample(const std::string& node, const std::string& metric, SimTime now, SimTime value);
    // Summary-only value (no time series), e.g. per-consumer totals.
    void set_summary(const std::string& node, const std::string& metric, std::int64_t value);

    std::int64_t total(const std::string& node, const std::string& metric) const;
    std::int64_t summary_value(const std::string& node, const std::string& metric) const;
    double mean_sample(const std::string& node, const std::string& metric) const;
    // Mean of samples whose bucket start falls in [from, to).
    double mean_sample_window(const std::string& node, const std::string& metric, SimTime from,
                              SimTime to) const;

    SimTime bucket_width() const { return bucket_width_; }

    // Long-format CSV: time,node,metric,value with bucket start in seconds.
    std::string series_csv() const;
    // Whole-run totals: node,metric,value.
    std::string summary_csv() const;

private:
    Series& series(const std::string& node, const std::string& metric);
    std::size_t bucket_index(SimTime now) const {
        return static_cast<std::size_t>(now / bucket_width_);
    }

    SimTime bucket_width_;
    std::map<std::string, std::map<std::string, Series>> series_;
    std::map<std::string, std::map<std::string, std::int64_t>> summary_;
};

} // namespace nacksim
