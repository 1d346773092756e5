#include "roomqd/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace roomqd {

namespace {

constexpr double kPlotSize = 400.0;
constexpr double kMargin = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string open_svg(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
}

// Plot-space mapping of [0,1]^2 with y growing upward.
double px(double x) { return kMargin + x * kPlotSize; }
double py(double y) { return kMargin + (1.0 - y) * kPlotSize; }

std::string axes(std::string_view x_label, std::string_view y_label) {
  std::string s;
  s += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" + num(kPlotSize) + "\" height=\"" +
       num(kPlotSize) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double t = i / 5.0;
    s += "<text x=\"" + num(px(t)) + "\" y=\"" + num(kMargin + kPlotSize + 16) + "\" text-anchor=\"middle\">" +
         num(t).substr(0, 3) + "</text>\n";
    s += "<text x=\"" + num(kMargin - 6) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" +
         num(t).substr(0, 3) + "</text>\n";
  }
  s += "<text x=\"" + num(kMargin + kPlotSize / 2) + "\" y=\"" + num(kMargin + kPlotSize + 36) +
       "\" text-anchor=\"middle\">" + std::string(x_label) + "</text>\n";
  s += "<text x=\"14\" y=\"" + num(kMargin + kPlotSize / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
       num(kMargin + kPlotSize / 2) + ")\">" + std::string(y_label) + "</text>\n";
  return s;
}

// Dark blue to pale yellow.
std::string heat(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(20 + t * (250 - 20)));
  const int g = static_cast<int>(std::lround(30 + t * (240 - 30)));
  const int b = static_cast<int>(std::lround(80 + t * (150 - 80)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

const char* tile_fill(Tile t) {
  switch (t) {
    case Tile::Floor: return "#e8e0cc";
    case Tile::Wall: return "#3a3a3a";
    case Tile::Treasure: return "#e0b020";
    case Tile::Enemy: return "#c03030";
    case Tile::Door: return "#6a4a2a";
  }
  return "#ff00ff";
}

}  // namespace

std::string hexbin_svg(const std::vector<HexBin>& bins, std::string_view x_label, std::string_view y_label,
                       std::optional<std::pair<double, double>> mark) {
  std::size_t peak = 0;
  for (const auto& b : bins) peak = std::max(peak, b.count);
  std::string s = open_svg(kPlotSize + 2 * kMargin, kPlotSize + 2 * kMargin);
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<clipPath id=\"plot\"><rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" +
       num(kPlotSize) + "\" height=\"" + num(kPlotSize) + "\"/></clipPath>\n<g clip-path=\"url(#plot)\">\n";
  const double r = HexLattice::radius() * kPlotSize;
  for (const auto& b : bins) {
    const double t = b.count == 0 || peak == 0 ? 0.0 : std::log1p(static_cast<double>(b.count)) /
                                                           std::log1p(static_cast<double>(peak));
    std::string pts;
    for (int k = 0; k < 6; ++k) {
      const double a = (60.0 * k - 30.0) * 3.14159265358979323846 / 180.0;
      pts += num(px(b.cx) + r * std::cos(a)) + "," + num(py(b.cy) + r * std::sin(a)) + " ";
    }
    s += "<polygon points=\"" + pts + "\" fill=\"" + (b.count ? heat(t) : std::string("#10142a")) + "\"/>\n";
  }
  s += "</g>\n";
  if (mark) {
    s += "<circle cx=\"" + num(px(mark->first)) + "\" cy=\"" + num(py(mark->second)) +
         "\" r=\"6\" fill=\"orange\" stroke=\"black\"/>\n";
  }
  s += axes(x_label, y_label);
  s += "</svg>\n";
  return s;
}

std::string scatter_svg(const DimensionFitness& series, std::optional<double> mark_x) {
  std::string s = open_svg(kPlotSize + 2 * kMargin, kPlotSize + 2 * kMargin);
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& [x, y] : series.points) {
    s += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(std::clamp(y, 0.0, 1.0))) +
         "\" r=\"1.5\" fill=\"#2060a0\" fill-opacity=\"0.3\"/>\n";
  }
  if (mark_x) {
    s += "<line x1=\"" + num(px(*mark_x)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(*mark_x)) + "\" y2=\"" +
         num(py(1)) + "\" stroke=\"orange\" stroke-width=\"2\"/>\n";
  }
  s += "<text x=\"" + num(kMargin) + "\" y=\"" + num(kMargin - 10) + "\">r = " + num(series.pearson_r) + "</text>\n";
  s += axes(name(series.dim), "fitness");
  s += "</svg>\n";
  return s;
}

std::string fitness_over_time_svg(const std::vector<BucketFitness>& series) {
  std::string s = open_svg(kPlotSize + 2 * kMargin, kPlotSize + 2 * kMargin);
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double n = std::max<double>(1.0, static_cast<double>(series.size()) - 1.0);
  auto x_of = [&](std::size_t i) { return px(static_cast<double>(i) / n); };
  // One polyline per run of non-empty buckets, so empty buckets stay gaps.
  auto lines = [&](auto value, const char* stroke) {
    std::string out;
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + stroke + "\"/>\n";
      pts.clear();
    };
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (series[i].count == 0) {
        flush();
        continue;
      }
      pts += num(x_of(i)) + "," + num(py(std::clamp(value(series[i]), 0.0, 1.0))) + " ";
    }
    flush();
    return out;
  };
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& b = series[i];
    if (b.count == 0) continue;
    const double lo = std::clamp(b.mean - b.ci95, 0.0, 1.0);
    const double hi = std::clamp(b.mean + b.ci95, 0.0, 1.0);
    s += "<line x1=\"" + num(x_of(i)) + "\" y1=\"" + num(py(lo)) + "\" x2=\"" + num(x_of(i)) + "\" y2=\"" +
         num(py(hi)) + "\" stroke=\"#9ab\" stroke-width=\"3\"/>\n";
  }
  s += lines([](const BucketFitness& b) { return b.mean; }, "#2060a0");
  s += lines([](const BucketFitness& b) { return b.max; }, "#c03030");
  s += axes("generation (fraction of run)", "fitness");
  s += "</svg>\n";
  return s;
}

std::string elite_grid_svg(const EliteBroadcast& b) {
  const int gx = b.dims.empty() ? 1 : b.dims[0].granularity;
  const int gy = b.dims.size() < 2 ? 1 : static_cast<int>(b.cell_count / static_cast<std::size_t>(gx));
  int cols = 13;
  int rows = 7;
  for (const auto& c : b.cells) {
    if (c.elite) {
      cols = c.elite->room.cols();
      rows = c.elite->room.rows();
      break;
    }
  }
  const double tile = 8.0;
  const double cw = cols * tile + 10;
  const double ch = rows * tile + 20;
  std::string s = open_svg(gx * cw + 20, gy * ch + 40);
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::string title = "generation " + std::to_string(b.generation) + ":";
  for (const auto& d : b.dims) title += " " + std::string(name(d.kind));
  s += "<text x=\"10\" y=\"16\">" + title + "</text>\n";
  for (const auto& c : b.cells) {
    if (!c.elite) continue;
    const int x = c.coords.empty() ? 0 : c.coords[0];
    int y = 0;
    std::size_t stride = 1;
    for (std::size_t i = 1; i < c.coords.size(); ++i) {
      y += c.coords[i] * static_cast<int>(stride);
      stride *= static_cast<std::size_t>(b.dims[i].granularity);
    }
    const double ox = 10 + x * cw;
    const double oy = 30 + (gy - 1 - y) * ch;
    const Room& room = c.elite->room;
    for (int ty = 0; ty < room.rows(); ++ty) {
      for (int tx = 0; tx < room.cols(); ++tx) {
        s += "<rect x=\"" + num(ox + tx * tile) + "\" y=\"" + num(oy + 14 + ty * tile) + "\" width=\"" + num(tile) +
             "\" height=\"" + num(tile) + "\" fill=\"" + tile_fill(room.at(Coord{tx, ty})) + "\"/>\n";
      }
    }
    s += "<text x=\"" + num(ox + room.cols() * tile) + "\" y=\"" + num(oy + 11) + "\" text-anchor=\"end\">" +
         num(c.elite->fitness()).substr(0, 4) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace roomqd
