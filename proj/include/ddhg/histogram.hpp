// Copyright 2026 The DDHG Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DDHG_HISTOGRAM_HPP
#define DDHG_HISTOGRAM_HPP

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddhg {

/// Half-open bin [low, high).
struct Bin {
  int low = 0;
  int high = 0;
  int count = 0;

  friend bool operator==(const Bin&, const Bin&) = default;
};

/// Fixed-width bins starting at the smallest value and covering the largest.
inline std::vector<Bin> histogram(const std::vector<int>& values, int bin_width) {
  if (values.empty()) throw std::invalid_argument("histogram: no values");
  if (bin_width < 1) throw std::invalid_argument("histogram: bin width must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const int lo = *lo_it, hi = *hi_it;
  const int n_bins = (hi - lo) / bin_width + 1;
  std::vector<Bin> bins(static_cast<std::size_t>(n_bins));
  for (int b = 0; b < n_bins; ++b) {
    bins[static_cast<std::size_t>(b)].low = lo + b * bin_width;
    bins[static_cast<std::size_t>(b)].high = lo + (b + 1) * bin_width;
  }
  for (int v : values) ++bins[static_cast<std::size_t>((v - lo) / bin_width)].count;
  return bins;
}

inline void write_histogram_csv(std::ostream& out, const std::vector<Bin>& bins) {
  out << "bin_low,bin_high,count\n";
  for (const auto& b : bins) out << b.low << ',' << b.high << ',' << b.count << '\n';
}

/// Bar chart of the bins as a standalone SVG document.
inline void write_histogram_svg(std::ostream& out, const std::vector<Bin>& bins, const std::string& title) {
  constexpr int width = 640, height = 360, margin = 40;
  int peak = 1;
  for (const auto& b : bins) peak = std::max(peak, b.count);
  const double bar_w = static_cast<double>(width - 2 * margin) / static_cast<double>(std::max<std::size_t>(bins.size(), 1));
  const double plot_h = height - 2 * margin;

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << title << "</text>\n";
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const double h = plot_h * bins[i].count / peak;
    svg << "<rect x=\"" << margin + bar_w * static_cast<double>(i) << "\" y=\"" << height - margin - h << "\" width=\""
        << bar_w << "\" height=\"" << h << "\" fill=\"steelblue\" stroke=\"white\"><title>[" << bins[i].low << ", "
        << bins[i].high << "): " << bins[i].count << "</title></rect>\n";
  }
  svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  if (!bins.empty()) {
    svg << "<text x=\"" << margin << "\" y=\"" << height - margin + 16 << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << bins.front().low << "</text>\n";
    svg << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 16
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << bins.back().high << "</text>\n";
  }
  svg << "</svg>\n";
  out << svg.str();
}

}  // namespace ddhg

#endif  // DDHG_HISTOGRAM_HPP
