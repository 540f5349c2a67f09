#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fbs {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool as_line = false;  // line overlay (fits) vs point markers (data)
};

enum class PlotKind { loglog, scatter };

/// Writes a self-contained SVG with axes, tick labels, the series, and a
/// legend carrying each series label. log-log plots drop nonpositive values
/// and throw if a series loses all of its points that way.
void emit_plot(const std::vector<PlotSeries>& series, PlotKind kind,
               const std::filesystem::path& path);

std::string render_plot_svg(const std::vector<PlotSeries>& series, PlotKind kind);

}  // namespace fbs
