#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nacksim {

struct PlotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FigureKind { Fig2, Fig3, Fig5, Fig6, BloomFp };

FigureKind figure_kind_from(const std::string& name);

// Renders a CSV produced by a sweep into a static SVG image.
//   fig2 / fig5: one bar per axis value (mean producer service delay /
//                mean router forwarding delay)
//   fig3 / fig6: per-bucket mean delay time series, one line per axis value
//   bloom_fp:    theoretical false-positive curves with Monte-Carlo points;
//                csv columns m,n,k,fp_observed (may be empty: points are
//                generated from `seed`)
std::string render_figure(FigureKind kind, const std::string& csv_text,
                          std::uint64_t seed = 1);

} // namespace nacksim
