#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>

namespace negw::svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 450.0;
constexpr double kMargin = 40.0;
constexpr std::array<const char*, 8> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string line_plot(const std::string& title, const std::vector<Series>& series) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t n = 0;
  for (const auto& s : series) {
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    n = std::max(n, s.values.size());
  }
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto px = [&](std::size_t i) {
    return kMargin + (kWidth - 2 * kMargin) * (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.5);
  };
  auto py = [&](double v) { return kHeight - kMargin - (kHeight - 2 * kMargin) * (v - lo) / (hi - lo); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) +
         "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
         escape(title) + "</text>\n";
  out += "<rect x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin) + "\" width=\"" + fmt(kWidth - 2 * kMargin) +
         "\" height=\"" + fmt(kHeight - 2 * kMargin) + "\" fill=\"none\" stroke=\"#888\"/>\n";
  if (lo < 0.0 && hi > 0.0) {
    out += "<line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(py(0.0)) + "\" x2=\"" + fmt(kWidth - kMargin) +
           "\" y2=\"" + fmt(py(0.0)) + "\" stroke=\"#ccc\"/>\n";
  }
  std::size_t color = 0;
  for (const auto& s : series) {
    const char* c = s.dots ? "#999999" : kColors[color++ % kColors.size()];
    if (s.dots) {
      out += "<g fill=\"" + std::string(c) + "\">\n";
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        out += "<circle cx=\"" + fmt(px(i)) + "\" cy=\"" + fmt(py(s.values[i])) + "\" r=\"1.5\"/>\n";
      }
      out += "</g>\n";
    } else {
      out += "<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (i) out += ' ';
        out += fmt(px(i)) + "," + fmt(py(s.values[i]));
      }
      out += "\"/>\n";
    }
  }
  double ly = kMargin + 14;
  color = 0;
  for (const auto& s : series) {
    const char* c = s.dots ? "#999999" : kColors[color++ % kColors.size()];
    out += "<text x=\"" + fmt(kMargin + 8) + "\" y=\"" + fmt(ly) + "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
           c + "\">" + escape(s.label) + "</text>\n";
    ly += 14;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace negw::svg
