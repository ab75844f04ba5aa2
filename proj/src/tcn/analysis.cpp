#include "stged/tcn/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "stged/core/errors.hpp"
#include "stged/tcn/labels.hpp"

namespace stged::tcn {

std::vector<ConnectivityPoint> connectivity_over_time(const Dataset& dataset, double threshold_db) {
  std::vector<ConnectivityPoint> out;
  for (const auto& s : dataset.snapshots) {
    const auto links = label_connectivity(*s, threshold_db);
    const auto hops = hop_counts(links);
    const std::size_t n = links.size();
    ConnectivityPoint p;
    p.t = s->t;
    double hop_sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        p.links += links(i, j);
        if (hops(i, j) > 0) {
          ++p.reachable_pairs;
          hop_sum += hops(i, j);
          p.max_hops = std::max(p.max_hops, hops(i, j));
        }
      }
    p.density = n > 1 ? static_cast<double>(p.links) / static_cast<double>(n * (n - 1)) : 0.0;
    p.mean_hops = p.reachable_pairs > 0 ? hop_sum / static_cast<double>(p.reachable_pairs) : 0.0;
    out.push_back(p);
  }
  return out;
}

std::vector<std::vector<double>> mean_connectivity(const Dataset& dataset, double threshold_db) {
  const std::size_t n = dataset.n_nodes;
  std::vector<std::vector<double>> mean(n, std::vector<double>(n, 0.0));
  if (dataset.snapshots.empty()) return mean;
  for (const auto& s : dataset.snapshots) {
    const auto links = label_connectivity(*s, threshold_db);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mean[i][j] += links(i, j);
  }
  for (auto& row : mean)
    for (auto& v : row) v /= static_cast<double>(dataset.snapshots.size());
  return mean;
}

std::vector<std::vector<std::uint32_t>> hop_series(const Dataset& dataset, std::size_t node, double threshold_db) {
  if (node >= dataset.n_nodes)
    throw ContractError("hop series: node " + std::to_string(node) + " outside [0, " +
                        std::to_string(dataset.n_nodes) + ")");
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& s : dataset.snapshots) {
    const auto hops = hop_counts(*s, threshold_db);
    std::vector<std::uint32_t> row(hops.size());
    for (std::size_t j = 0; j < hops.size(); ++j) row[j] = hops(node, j);
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string comment_safe(std::string s) {
  // "--" may not appear inside an XML comment.
  for (std::size_t k = s.find("--"); k != std::string::npos; k = s.find("--", k)) s.replace(k, 2, "- -");
  return s;
}

}  // namespace

std::string svg_heatmap(const std::vector<std::vector<double>>& cells, const std::string& title,
                        const std::string& row_label, const std::string& col_label, const Provenance& provenance) {
  const std::size_t rows = cells.size();
  const std::size_t cols = rows ? cells.front().size() : 0;
  double peak = 0.0;
  for (const auto& r : cells) {
    if (r.size() != cols) throw ContractError("svg heatmap: ragged rows");
    for (double v : r) peak = std::max(peak, v);
  }
  // Keep the image a sensible size for long time series.
  const double cell_w = std::clamp(600.0 / std::max<std::size_t>(cols, 1), 1.0, 24.0);
  const double cell_h = std::clamp(600.0 / std::max<std::size_t>(rows, 1), 0.5, 24.0);
  const double left = 60, top = 40;
  const double width = left + cell_w * static_cast<double>(cols) + 20;
  const double height = top + cell_h * static_cast<double>(rows) + 40;

  std::ostringstream svg;
  char buf[160];
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<!-- command: " << comment_safe(provenance.command) << " | seed: " << provenance.seed << " -->\n";
  std::snprintf(buf, sizeof buf, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", width,
                height);
  svg << buf;
  svg << "<text x=\"" << left << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
      << "</text>\n";
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = peak > 0 ? cells[r][c] / peak : 0.0;
      const int shade = static_cast<int>(255.0 - 200.0 * v + 0.5);
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"rgb(%d,%d,255)\"/>\n",
                    left + cell_w * static_cast<double>(c), top + cell_h * static_cast<double>(r), cell_w, cell_h,
                    shade, shade);
      svg << buf;
    }
  svg << "<text x=\"" << left << "\" y=\"" << height - 12 << "\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape(col_label) << " (max " << peak << ")</text>\n";
  svg << "<text x=\"14\" y=\"" << top + 12 << "\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(90 14 "
      << top + 12 << ")\">" << escape(row_label) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace stged::tcn
