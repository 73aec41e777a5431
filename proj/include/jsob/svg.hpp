#ifndef JSOB_SVG_HPP
#define JSOB_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace jsob::svg {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr double width = 640, height = 420, margin = 50;

}  // namespace detail

/// Polyline of (x, y) with an optional log10 y axis; non-positive or
/// non-finite y values are skipped on a log axis.
inline void line_plot(std::ostream& out, const std::vector<double>& xs, const std::vector<double>& ys,
                      const std::string& title, const std::string& x_label, const std::string& y_label,
                      bool log_y) {
  using namespace detail;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    double y = ys[i];
    if (log_y) {
      if (!(y > 0) || !std::isfinite(y)) continue;
      y = std::log10(y);
    }
    if (std::isfinite(xs[i]) && std::isfinite(y)) pts.emplace_back(xs[i], y);
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
      << "</text>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"14\" y=\"" << height / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 " << height / 2
      << ")\" text-anchor=\"middle\">" << escape(log_y ? "log10 " + y_label : y_label) << "</text>\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
      << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!pts.empty()) {
    double x0 = pts[0].first, x1 = x0, y0 = pts[0].second, y1 = y0;
    for (const auto& [x, y] : pts) {
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); };
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out << (i ? " " : "") << num(px(pts[i].first)) << ',' << num(py(pts[i].second));
    out << "\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"" << height - margin + 15 << "\" font-size=\"10\">" << num(x0)
        << "</text>\n";
    out << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 15
        << "\" font-size=\"10\" text-anchor=\"end\">" << num(x1) << "</text>\n";
    out << "<text x=\"" << margin - 4 << "\" y=\"" << height - margin << "\" font-size=\"10\" text-anchor=\"end\">"
        << num(y0) << "</text>\n";
    out << "<text x=\"" << margin - 4 << "\" y=\"" << margin + 10 << "\" font-size=\"10\" text-anchor=\"end\">"
        << num(y1) << "</text>\n";
  }
  out << "</svg>\n";
}

/// Cell grid: values[i][j] is a category index into `colors`, row i at x = xs[i], column j at y = ys[j].
inline void heatmap(std::ostream& out, const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<std::vector<int>>& values, const std::vector<std::string>& colors,
                    const std::string& title, const std::string& x_label, const std::string& y_label) {
  using namespace detail;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
      << "</text>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"14\" y=\"" << height / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 " << height / 2
      << ")\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
  if (!xs.empty() && !ys.empty()) {
    const double cw = (width - 2 * margin) / static_cast<double>(xs.size());
    const double ch = (height - 2 * margin) / static_cast<double>(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const int v = values[i][j];
        if (v < 0 || v >= static_cast<int>(colors.size())) continue;
        out << "<rect x=\"" << num(margin + static_cast<double>(i) * cw) << "\" y=\"" << num(height - margin - static_cast<double>(j + 1) * ch)
            << "\" width=\"" << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"" << colors[v] << "\"/>\n";
      }
    }
    out << "<text x=\"" << margin << "\" y=\"" << height - margin + 15 << "\" font-size=\"10\">" << num(xs.front())
        << "</text>\n";
    out << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 15
        << "\" font-size=\"10\" text-anchor=\"end\">" << num(xs.back()) << "</text>\n";
    out << "<text x=\"" << margin - 4 << "\" y=\"" << height - margin << "\" font-size=\"10\" text-anchor=\"end\">"
        << num(ys.front()) << "</text>\n";
    out << "<text x=\"" << margin - 4 << "\" y=\"" << margin + 10 << "\" font-size=\"10\" text-anchor=\"end\">"
        << num(ys.back()) << "</text>\n";
  }
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
      << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "</svg>\n";
}

}  // namespace jsob::svg

#endif  // JSOB_SVG_HPP
