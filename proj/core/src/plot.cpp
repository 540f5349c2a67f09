#include "fbs/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fbs {

namespace {

constexpr double kWidth = 640.0, kHeight = 440.0;
constexpr double kMarginL = 70.0, kMarginR = 20.0, kMarginT = 20.0, kMarginB = 50.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void grow(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo == hi) {
      lo -= 1.0;
      hi += 1.0;
    } else {
      const double margin = 0.05 * (hi - lo);
      lo -= margin;
      hi += margin;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_plot_svg(const std::vector<PlotSeries>& series, PlotKind kind) {
  if (series.empty()) throw std::invalid_argument("emit_plot: no series");
  const bool log_axes = kind == PlotKind::loglog;

  struct Prepared {
    std::string label;
    std::vector<std::pair<double, double>> pts;
    bool as_line;
  };
  std::vector<Prepared> prepared;
  Range rx, ry;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw std::invalid_argument("emit_plot: series '" + s.label + "' is empty or ragged");
    Prepared p{s.label, {}, s.as_line};
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double x = s.x[i], y = s.y[i];
      if (log_axes) {
        if (!(x > 0.0 && y > 0.0)) continue;
        x = std::log10(x);
        y = std::log10(y);
      }
      rx.grow(x);
      ry.grow(y);
      p.pts.emplace_back(x, y);
    }
    if (p.pts.empty())
      throw std::invalid_argument("emit_plot: series '" + s.label +
                                  "' has no positive points for log axes");
    prepared.push_back(std::move(p));
  }
  rx.pad();
  ry.pad();

  auto sx = [&](double x) {
    return kMarginL + (x - rx.lo) / (rx.hi - rx.lo) * (kWidth - kMarginL - kMarginR);
  };
  auto sy = [&](double y) {
    return kHeight - kMarginB - (y - ry.lo) / (ry.hi - ry.lo) * (kHeight - kMarginT - kMarginB);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  svg << "<line x1=\"" << kMarginL << "\" y1=\"" << kHeight - kMarginB << "\" x2=\""
      << kWidth - kMarginR << "\" y2=\"" << kHeight - kMarginB
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT << "\" x2=\"" << kMarginL
      << "\" y2=\"" << kHeight - kMarginB << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Ticks: five per axis, labelled in data units (10^v for log axes).
  for (int i = 0; i <= 4; ++i) {
    const double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
    const double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
    const double px = sx(fx), py = sy(fy);
    svg << "<line x1=\"" << px << "\" y1=\"" << kHeight - kMarginB << "\" x2=\"" << px
        << "\" y2=\"" << kHeight - kMarginB + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px << "\" y=\"" << kHeight - kMarginB + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">"
        << (log_axes ? "1e" + fmt(fx) : fmt(fx)) << "</text>\n";
    svg << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << py << "\" x2=\"" << kMarginL
        << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kMarginL - 8 << "\" y=\"" << py + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << (log_axes ? "1e" + fmt(fy) : fmt(fy))
        << "</text>\n";
  }

  for (std::size_t si = 0; si < prepared.size(); ++si) {
    const auto& p = prepared[si];
    const char* color = kColors[si % (sizeof(kColors) / sizeof(kColors[0]))];
    if (p.as_line) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : p.pts) svg << fmt(sx(x)) << "," << fmt(sy(y)) << " ";
      svg << "\"/>\n";
    } else {
      for (const auto& [x, y] : p.pts)
        svg << "<circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y))
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kMarginT + 16.0 * static_cast<double>(si + 1);
    svg << "<rect x=\"" << kWidth - kMarginR - 190 << "\" y=\"" << ly - 9
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << kWidth - kMarginR - 175 << "\" y=\"" << ly
        << "\" font-size=\"12\">" << escape_xml(p.label) << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const std::vector<PlotSeries>& series, PlotKind kind,
               const std::filesystem::path& path) {
  const std::string svg = render_plot_svg(series, kind);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_plot: cannot open " + path.string());
  out << svg;
}

}  // namespace fbs
