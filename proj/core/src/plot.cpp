#include "nacksim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "nacksim/bloom.hpp"
#include "nacksim/hash.hpp"
#include "nacksim/zipf.hpp"

namespace nacksim {

namespace {

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return static_cast<int>(i);
        return -1;
    }
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t next = line.find(',', pos);
            fields.push_back(next == std::string::npos ? line.substr(pos)
                                                       : line.substr(pos, next - pos));
            if (next == std::string::npos)
                break;
            pos = next + 1;
        }
        if (first) {
            csv.header = std::move(fields);
            first = false;
        } else {
            csv.rows.push_back(std::move(fields));
        }
    }
    return csv;
}

void require_columns(const Csv& csv, const std::vector<std::string>& cols) {
    std::string missing;
    for (const auto& c : cols)
        if (csv.col(c) < 0)
            missing += (missing.empty() ? "" : ", ") + c;
    if (!missing.empty())
        throw PlotError("csv schema mismatch; missing columns: " + missing);
    if (csv.rows.empty())
        throw PlotError("csv has no data rows");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Minimal SVG canvas with linear axes.
class Svg {
public:
    Svg(double width, double height, std::string title)
        : w_(width), h_(height) {
        body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\""
              << h_ << "\" viewBox=\"0 0 " << w_ << ' ' << h_ << "\">\n"
              << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
              << "<text x=\"" << w_ / 2 << "\" y=\"20\" text-anchor=\"middle\" "
              << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    }

    void set_ranges(double x0, double x1, double y0, double y1) {
        x0_ = x0;
        x1_ = x1 > x0 ? x1 : x0 + 1;
        y0_ = y0;
        y1_ = y1 > y0 ? y1 : y0 + 1;
    }

    double px(double x) const { return ml_ + (x - x0_) / (x1_ - x0_) * (w_ - ml_ - mr_); }
    double py(double y) const { return h_ - mb_ - (y - y0_) / (y1_ - y0_) * (h_ - mt_ - mb_); }

    void axes(const std::string& xlabel, const std::string& ylabel) {
        body_ << "<line x1=\"" << ml_ << "\" y1=\"" << h_ - mb_ << "\" x2=\"" << w_ - mr_
              << "\" y2=\"" << h_ - mb_ << "\" stroke=\"black\"/>\n";
        body_ << "<line x1=\"" << ml_ << "\" y1=\"" << mt_ << "\" x2=\"" << ml_ << "\" y2=\""
              << h_ - mb_ << "\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 5; ++i) {
            double xv = x0_ + (x1_ - x0_) * i / 5.0;
            double yv = y0_ + (y1_ - y0_) * i / 5.0;
            body_ << "<text x=\"" << px(xv) << "\" y=\"" << h_ - mb_ + 16
                  << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
                  << fmt(xv) << "</text>\n";
            body_ << "<text x=\"" << ml_ - 6 << "\" y=\"" << py(yv) + 4
                  << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
                  << fmt(yv) << "</text>\n";
        }
        body_ << "<text x=\"" << (ml_ + w_ - mr_) / 2 << "\" y=\"" << h_ - 8
              << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
              << xlabel << "</text>\n";
        body_ << "<text x=\"14\" y=\"" << (mt_ + h_ - mb_) / 2
              << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
              << "transform=\"rotate(-90 14 " << (mt_ + h_ - mb_) / 2 << ")\">" << ylabel
              << "</text>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
        if (pts.empty())
            return;
        body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts)
            body_ << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
        body_ << "\"/>\n";
    }

    void circle(double x, double y, const std::string& color) {
        body_ << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
              << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }

    void bar(double x_center, double half_width, double y, const std::string& color,
             const std::string& label) {
        double x0 = px(x_center - half_width), x1 = px(x_center + half_width);
        double ytop = py(y), ybase = py(y0_);
        body_ << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(ytop) << "\" width=\""
              << fmt(x1 - x0) << "\" height=\"" << fmt(ybase - ytop) << "\" fill=\"" << color
              << "\"/>\n";
        body_ << "<text x=\"" << fmt(px(x_center)) << "\" y=\"" << h_ - mb_ + 16
              << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << label
              << "</text>\n";
    }

    void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
        double y = mt_ + 6;
        for (const auto& [label, color] : entries) {
            body_ << "<rect x=\"" << w_ - mr_ - 130 << "\" y=\"" << y - 8
                  << "\" width=\"12\" height=\"8\" fill=\"" << color << "\"/>\n";
            body_ << "<text x=\"" << w_ - mr_ - 114 << "\" y=\"" << y
                  << "\" font-family=\"sans-serif\" font-size=\"10\">" << label << "</text>\n";
            y += 14;
        }
    }

    std::string finish() {
        body_ << "</svg>\n";
        return body_.str();
    }

private:
    double w_, h_;
    double ml_ = 60, mr_ = 20, mt_ = 36, mb_ = 40;
    double x0_ = 0, x1_ = 1, y0_ = 0, y1_ = 1;
    std::ostringstream body_;
};

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct DelaySpec {
    std::string node;
    std::string metric;
    std::string title;
    std::string ylabel;
};

DelaySpec delay_spec(FigureKind kind) {
    switch (kind) {
        case FigureKind::Fig2:
            return {"p0", "data_delay", "Existing-content service delay vs. attacker share",
                    "mean service delay (ms)"};
        case FigureKind::Fig3:
            return {"p0", "data_delay", "Existing-content service delay under population growth",
                    "mean service delay (ms)"};
        case FigureKind::Fig5:
            return {"r0", "fwd_delay", "Router forwarding delay vs. attacker share",
                    "mean forwarding delay (us)"};
        case FigureKind::Fig6:
            return {"r0", "fwd_delay", "Router forwarding delay under population growth",
                    "mean forwarding delay (us)"};
        default:
            return {};
    }
}

std::string render_bars(FigureKind kind, const Csv& csv) {
    require_columns(csv, {"axis", "axis_value", "time", "node", "metric", "value"});
    DelaySpec spec = delay_spec(kind);
    int c_ax = csv.col("axis_value"), c_node = csv.col("node"), c_metric = csv.col("metric"),
        c_val = csv.col("value");

    std::vector<std::string> order;
    std::map<std::string, std::pair<double, double>> sums;  // value -> (sum, count)
    for (const auto& row : csv.rows) {
        if (row[c_node] != spec.node)
            continue;
        const std::string& av = row[c_ax];
        if (sums.find(av) == sums.end())
            order.push_back(av);
        auto& acc = sums[av];
        if (row[c_metric] == spec.metric + "_sum_us")
            acc.first += std::stod(row[c_val]);
        else if (row[c_metric] == spec.metric + "_count")
            acc.second += std::stod(row[c_val]);
    }
    if (order.empty())
        throw PlotError("no rows for node " + spec.node + " metric " + spec.metric);

    double unit = kind == FigureKind::Fig2 || kind == FigureKind::Fig3 ? 1000.0 : 1.0;
    std::vector<double> means;
    double ymax = 0;
    for (const auto& av : order) {
        auto [sum, count] = sums[av];
        double mean = count > 0 ? sum / count / unit : 0.0;
        means.push_back(mean);
        ymax = std::max(ymax, mean);
    }
    Svg svg(640, 420, spec.title);
    svg.set_ranges(0, static_cast<double>(order.size()), 0, ymax * 1.15 + 1e-9);
    svg.axes("", spec.ylabel);
    for (std::size_t i = 0; i < order.size(); ++i)
        svg.bar(static_cast<double>(i) + 0.5, 0.3, means[i], kColors[i % 6], order[i]);
    return svg.finish();
}

std::string render_series(FigureKind kind, const Csv& csv) {
    require_columns(csv, {"axis", "axis_value", "time", "node", "metric", "value"});
    DelaySpec spec = delay_spec(kind);
    int c_ax = csv.col("axis_value"), c_time = csv.col("time"), c_node = csv.col("node"),
        c_metric = csv.col("metric"), c_val = csv.col("value");

    // axis value -> time -> (sum, count)
    std::vector<std::string> order;
    std::map<std::string, std::map<double, std::pair<double, double>>> series;
    for (const auto& row : csv.rows) {
        if (row[c_node] != spec.node)
            continue;
        const std::string& av = row[c_ax];
        bool is_sum = row[c_metric] == spec.metric + "_sum_us";
        bool is_count = row[c_metric] == spec.metric + "_count";
        if (!is_sum && !is_count)
            continue;
        if (series.find(av) == series.end())
            order.push_back(av);
        auto& slot = series[av][std::stod(row[c_time])];
        (is_sum ? slot.first : slot.second) += std::stod(row[c_val]);
    }
    if (order.empty())
        throw PlotError("no rows for node " + spec.node + " metric " + spec.metric);

    double unit = kind == FigureKind::Fig3 ? 1000.0 : 1.0;
    double xmax = 0, ymax = 0;
    std::map<std::string, std::vector<std::pair<double, double>>> lines;
    for (const auto& av : order) {
        for (const auto& [t, acc] : series[av]) {
            if (acc.second <= 0)
                continue;
            double mean = acc.first / acc.second / unit;
            lines[av].emplace_back(t, mean);
            xmax = std::max(xmax, t);
            ymax = std::max(ymax, mean);
        }
    }
    Svg svg(640, 420, spec.title);
    svg.set_ranges(0, xmax, 0, ymax * 1.15 + 1e-9);
    svg.axes("time (s)", spec.ylabel);
    std::vector<std::pair<std::string, std::string>> legend;
    for (std::size_t i = 0; i < order.size(); ++i) {
        svg.polyline(lines[order[i]], kColors[i % 6]);
        legend.emplace_back(order[i], kColors[i % 6]);
    }
    svg.legend(legend);
    return svg.finish();
}

std::string render_bloom_fp(const std::string& csv_text, std::uint64_t seed) {
    // Monte-Carlo points: either from the CSV or generated here.
    struct Point {
        double ratio;
        double fp;
    };
    std::vector<Point> points;
    if (!csv_text.empty()) {
        Csv csv = parse_csv(csv_text);
        require_columns(csv, {"m", "n", "k", "fp_observed"});
        int cm = csv.col("m"), cn = csv.col("n"), cf = csv.col("fp_observed");
        for (const auto& row : csv.rows) {
            double m = std::stod(row[cm]), n = std::stod(row[cn]);
            points.push_back({m / n, std::stod(row[cf])});
        }
    } else {
        std::mt19937_64 rng(mix_seed(seed, "bloom_fp_plot"));
        for (double ratio : {3.0, 5.0, 8.0, 12.0}) {
            std::uint64_t n = 2000;
            std::uint64_t m = static_cast<std::uint64_t>(ratio * n);
            BloomParams params{m, n, optimal_k(m, n), rng()};
            BloomFilter filter(params);
            for (std::uint64_t i = 0; i < n; ++i)
                filter.insert(Name({"p", "in" + std::to_string(i)}));
            std::uint64_t hits = 0, probes = 100000;
            for (std::uint64_t i = 0; i < probes; ++i)
                if (filter.query(Name({"p", "out" + std::to_string(i)})))
                    ++hits;
            points.push_back({ratio, static_cast<double>(hits) / probes});
        }
    }

    // log10 of the exact form at the optimized k, and of 0.6185^(m/n), over m/n in [2, 30]
    std::vector<std::pair<double, double>> eq2, eq3;
    double ymin = 0;
    for (double ratio = 2.0; ratio <= 30.0; ratio += 0.5) {
        std::uint64_t n = 10000;
        std::uint64_t m = static_cast<std::uint64_t>(ratio * n);
        double fe = fp_exact(m, n, optimal_k(m, n));
        double fo = fp_optimal(m, n);
        eq2.emplace_back(ratio, std::log10(std::max(fe, 1e-12)));
        eq3.emplace_back(ratio, std::log10(std::max(fo, 1e-12)));
        ymin = std::min({ymin, eq2.back().second, eq3.back().second});
    }
    Svg svg(640, 420, "Bloom filter false positive probability");
    svg.set_ranges(2, 30, ymin * 1.05, 0);
    svg.axes("m / n (bits per element)", "log10 P[false positive]");
    svg.polyline(eq2, kColors[0]);
    svg.polyline(eq3, kColors[1]);
    for (const auto& p : points)
        svg.circle(p.ratio, std::log10(std::max(p.fp, 1e-12)), kColors[2]);
    svg.legend({{"exact, optimized k", kColors[0]},
                {"0.6185^(m/n)", kColors[1]},
                {"Monte-Carlo", kColors[2]}});
    return svg.finish();
}

} // namespace

FigureKind figure_kind_from(const std::string& name) {
    if (name == "fig2")
        return FigureKind::Fig2;
    if (name == "fig3")
        return FigureKind::Fig3;
    if (name == "fig5")
        return FigureKind::Fig5;
    if (name == "fig6")
        return FigureKind::Fig6;
    if (name == "bloom_fp")
        return FigureKind::BloomFp;
    throw PlotError("unknown figure kind: " + name + " (want fig2|fig3|fig5|fig6|bloom_fp)");
}

std::string render_figure(FigureKind kind, const std::string& csv_text, std::uint64_t seed) {
    switch (kind) {
        case FigureKind::Fig2:
        case FigureKind::Fig5:
            return render_bars(kind, parse_csv(csv_text));
        case FigureKind::Fig3:
        case FigureKind::Fig6:
            return render_series(kind, parse_csv(csv_text));
        case FigureKind::BloomFp:
            return render_bloom_fp(csv_text, seed);
    }
    throw PlotError("unreachable");
}

} // namespace nacksim
