#include "tweetpol/charts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "tweetpol/csv.hpp"

namespace tweetpol::charts {

namespace {

using election::ChartKind;
using election::ChartSpec;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kWidth = 640;
constexpr int kHeight = 420;

std::string fmt(double v, int decimals = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void header(std::ostringstream& out, const ChartSpec& chart) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
      << escape_xml(chart.title) << "</text>\n";
}

void footer(std::ostringstream& out, const ChartSpec& chart) {
  int y = kHeight - 8 - 14 * static_cast<int>(chart.notes.size() > 0 ? chart.notes.size() - 1 : 0);
  for (const auto& note : chart.notes) {
    out << "<text x=\"10\" y=\"" << y << "\" font-size=\"11\" fill=\"#555\">" << escape_xml(note)
        << "</text>\n";
    y += 14;
  }
  out << "</svg>\n";
}

void render_pie(std::ostringstream& out, const ChartSpec& chart) {
  const double cx = 200.0;
  const double cy = 220.0;
  const double r = 150.0;
  double total = 0.0;
  for (const auto& p : chart.points) total += std::max(0.0, p.value.value_or(0.0));
  double angle = -std::numbers::pi / 2.0;
  int legend_y = 70;
  for (std::size_t k = 0; k < chart.points.size(); ++k) {
    const auto& p = chart.points[k];
    const double v = std::max(0.0, p.value.value_or(0.0));
    const char* color = kPalette[k % std::size(kPalette)];
    if (total > 0.0 && v > 0.0) {
      const double sweep = 2.0 * std::numbers::pi * v / total;
      if (v >= total) {
        out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r)
            << "\" fill=\"" << color << "\"/>\n";
      } else {
        const double x0 = cx + r * std::cos(angle);
        const double y0 = cy + r * std::sin(angle);
        const double x1 = cx + r * std::cos(angle + sweep);
        const double y1 = cy + r * std::sin(angle + sweep);
        out << "<path d=\"M " << fmt(cx) << " " << fmt(cy) << " L " << fmt(x0) << " " << fmt(y0)
            << " A " << fmt(r) << " " << fmt(r) << " 0 " << (sweep > std::numbers::pi ? 1 : 0)
            << " 1 " << fmt(x1) << " " << fmt(y1) << " Z\" fill=\"" << color
            << "\" stroke=\"white\" stroke-width=\"1\"/>\n";
      }
      angle += sweep;
    }
    out << "<rect x=\"390\" y=\"" << legend_y - 11 << "\" width=\"12\" height=\"12\" fill=\""
        << color << "\"/>\n"
        << "<text x=\"408\" y=\"" << legend_y << "\" font-size=\"12\">" << escape_xml(p.category)
        << ": " << fmt(v) << chart.unit << "</text>\n";
    legend_y += 20;
  }
}

void render_bars(std::ostringstream& out, const ChartSpec& chart) {
  const double left = 70.0;
  const double right = kWidth - 30.0;
  const double top = 60.0;
  const double bottom = kHeight - 70.0;
  double max_value = 0.0;
  for (const auto& p : chart.points) max_value = std::max(max_value, p.value.value_or(0.0));
  if (max_value <= 0.0) max_value = 1.0;
  max_value *= 1.1;

  out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(right)
      << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
      << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double value = max_value * tick / 4.0;
    const double y = bottom - (bottom - top) * tick / 4.0;
    out << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(value) << "</text>\n";
  }

  const std::size_t n = std::max<std::size_t>(chart.points.size(), 1);
  const double slot = (right - left) / static_cast<double>(n);
  const double bar = slot * 0.6;
  for (std::size_t k = 0; k < chart.points.size(); ++k) {
    const auto& p = chart.points[k];
    const double x = left + slot * static_cast<double>(k) + (slot - bar) / 2.0;
    const double center = x + bar / 2.0;
    if (p.value) {
      const double h = (bottom - top) * std::max(0.0, *p.value) / max_value;
      out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(bottom - h) << "\" width=\"" << fmt(bar)
          << "\" height=\"" << fmt(h) << "\" fill=\"" << kPalette[k % std::size(kPalette)]
          << "\"/>\n"
          << "<text x=\"" << fmt(center) << "\" y=\"" << fmt(bottom - h - 6)
          << "\" text-anchor=\"middle\" font-size=\"12\">" << fmt(*p.value) << chart.unit
          << "</text>\n";
    } else {
      out << "<text x=\"" << fmt(center) << "\" y=\"" << fmt(bottom - 6)
          << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"#a00\">undefined</text>\n";
    }
    out << "<text x=\"" << fmt(center) << "\" y=\"" << fmt(bottom + 18)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << escape_xml(p.category) << "</text>\n";
  }
}

}  // namespace

std::string render_svg(const ChartSpec& chart) {
  std::ostringstream out;
  header(out, chart);
  if (chart.kind == ChartKind::Pie) {
    render_pie(out, chart);
  } else {
    render_bars(out, chart);
  }
  footer(out, chart);
  return out.str();
}

std::string render_sidecar(const ChartSpec& chart) {
  std::string out = "category,value\n";
  for (const auto& p : chart.points) {
    char buf[64];
    if (p.value) {
      std::snprintf(buf, sizeof buf, "%.17g", *p.value);
    } else {
      std::snprintf(buf, sizeof buf, "undefined");
    }
    out += csv::format_row({p.category, buf});
  }
  return out;
}

}  // namespace tweetpol::charts
