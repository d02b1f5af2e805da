#ifndef SPECTRAL_COMPLEXITY_SVG_HPP
#define SPECTRAL_COMPLEXITY_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "report.hpp"
#include "spectral.hpp"

namespace spectral_complexity {

namespace svg {

inline std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    case '\'': out += "&apos;"; break;
    default: out += c;
    }
  }
  return out;
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

/// Maps data coordinates into a fixed plotting frame with a margin for labels.
struct Frame {
  double width = 640, height = 480, margin = 60;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

  static Frame fit(const std::vector<double>& xs, const std::vector<double>& ys, bool pad) {
    Frame f;
    if (!xs.empty()) {
      f.x_min = *std::min_element(xs.begin(), xs.end());
      f.x_max = *std::max_element(xs.begin(), xs.end());
      f.y_min = *std::min_element(ys.begin(), ys.end());
      f.y_max = *std::max_element(ys.begin(), ys.end());
    }
    auto widen = [pad](double& lo, double& hi) {
      if (hi - lo <= 0.0) {
        lo -= 1.0;
        hi += 1.0;
      } else if (pad) {
        const double p = 0.1 * (hi - lo);
        lo -= p;
        hi += p;
      }
    };
    widen(f.x_min, f.x_max);
    widen(f.y_min, f.y_max);
    return f;
  }
  double px(double x) const { return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin); }
  double py(double y) const { return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin); }
};

inline std::string open(const Frame& f, const std::string& title, const std::string& x_label,
                        const std::string& y_label) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(f.width) + "\" height=\"" + fmt(f.height) +
       "\" viewBox=\"0 0 " + fmt(f.width) + " " + fmt(f.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(f.width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + escape(title) +
       "</text>\n";
  const auto left = fmt(f.margin), right = fmt(f.width - f.margin);
  const auto top = fmt(f.margin), bottom = fmt(f.height - f.margin);
  s += "<line x1=\"" + left + "\" y1=\"" + bottom + "\" x2=\"" + right + "\" y2=\"" + bottom + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + left + "\" y1=\"" + bottom + "\" x2=\"" + left + "\" y2=\"" + top + "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + fmt(f.width / 2) + "\" y=\"" + fmt(f.height - 20) + "\" text-anchor=\"middle\">" +
       escape(x_label) + "</text>\n";
  s += "<text x=\"18\" y=\"" + fmt(f.height / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       fmt(f.height / 2) + ")\">" + escape(y_label) + "</text>\n";
  s += "<text x=\"" + left + "\" y=\"" + fmt(f.height - f.margin + 16) + "\" text-anchor=\"middle\">" +
       escape(fmt(f.x_min)) + "</text>\n";
  s += "<text x=\"" + right + "\" y=\"" + fmt(f.height - f.margin + 16) + "\" text-anchor=\"middle\">" +
       escape(fmt(f.x_max)) + "</text>\n";
  s += "<text x=\"" + fmt(f.margin - 6) + "\" y=\"" + bottom + "\" text-anchor=\"end\">" + escape(fmt(f.y_min)) +
       "</text>\n";
  s += "<text x=\"" + fmt(f.margin - 6) + "\" y=\"" + top + "\" text-anchor=\"end\">" + escape(fmt(f.y_max)) +
       "</text>\n";
  return s;
}

inline std::string scatter(const Frame& f, const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::vector<std::string>& labels) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s += "<circle cx=\"" + fmt(f.px(xs[i])) + "\" cy=\"" + fmt(f.py(ys[i])) +
         "\" r=\"5\" fill=\"steelblue\"/>\n";
    if (i < labels.size())
      s += "<text x=\"" + fmt(f.px(xs[i]) + 7) + "\" y=\"" + fmt(f.py(ys[i]) - 7) + "\">" + escape(labels[i]) +
           "</text>\n";
  }
  return s;
}

} // namespace svg

/// Index-vs-eigenvalue polyline.
inline std::string spectrum_svg(const Spectrum& s, const std::string& title = "Laplacian spectrum") {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < s.size(); ++i) {
    xs.push_back(static_cast<double>(i));
    ys.push_back(s.eigenvalues[i]);
  }
  auto frame = svg::Frame::fit(xs, ys, false);
  frame.y_min = std::min(0.0, frame.y_min);
  std::string out = svg::open(frame, title, "index", "eigenvalue");
  out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out += (i ? " " : "") + svg::fmt(frame.px(xs[i])) + "," + svg::fmt(frame.py(ys[i]));
  out += "\"/>\n</svg>\n";
  return out;
}

/// Labeled scatter of the inter-class MDS map.
inline std::string mds_svg(const InterClassMap& map, const std::vector<std::string>& labels) {
  std::vector<double> xs, ys;
  for (Eigen::Index i = 0; i < map.coordinates.rows(); ++i) {
    xs.push_back(map.coordinates(i, 0));
    ys.push_back(map.coordinates(i, 1));
  }
  // Square frame centred on the origin keeps distances undistorted.
  double extent = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) extent = std::max({extent, std::abs(xs[i]), std::abs(ys[i])});
  if (extent == 0.0) extent = 1.0;
  svg::Frame frame;
  frame.width = frame.height = 560;
  frame.x_min = frame.y_min = -1.2 * extent;
  frame.x_max = frame.y_max = 1.2 * extent;
  std::string out = svg::open(frame, "Inter-class distance (MDS)", "MDS axis 1", "MDS axis 2");
  out += svg::scatter(frame, xs, ys, labels);
  out += "</svg>\n";
  return out;
}

/// Metric value against oracle error, one point per benchmark dataset.
inline std::string benchmark_svg(const BenchmarkResult& b, const std::string& metric = "cmsauls") {
  std::vector<double> xs, ys;
  std::vector<std::string> labels;
  for (const auto& row : b.rows) {
    double v = row.scores.cmsauls;
    if (metric == "csg") v = row.scores.csg;
    if (metric == "auls") v = row.scores.auls;
    xs.push_back(v);
    ys.push_back(row.oracle_error);
    labels.push_back("s=" + svg::fmt(row.separation));
  }
  const auto frame = svg::Frame::fit(xs, ys, true);
  std::string out = svg::open(frame, metric + " vs Bayes error", metric, "oracle error");
  out += svg::scatter(frame, xs, ys, labels);
  out += "</svg>\n";
  return out;
}

inline void emit_spectrum_svg(const Spectrum& s, const std::filesystem::path& path) {
  write_text(path, spectrum_svg(s));
}

inline void emit_mds_svg(const InterClassMap& map, const std::vector<std::string>& labels,
                         const std::filesystem::path& path) {
  write_text(path, mds_svg(map, labels));
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_SVG_HPP
