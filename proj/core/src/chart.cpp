#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "tatecalc/spectral.hpp"

namespace tatecalc::spectral {

namespace {

constexpr int kMargin = 50;
constexpr int kCellWidth = 140;
constexpr int kLineHeight = 14;
constexpr int kCellPad = 8;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const E2Page& page) {
  // cell (l, q) -> labels in basis order
  std::map<std::pair<long, long>, std::vector<std::string>> cells;
  long max_l = 1;
  for (std::size_t i = 0; i < page.basis().size(); ++i) {
    const auto& d = page.basis()[i].degree;
    cells[{d.l, d.q}].push_back(page.label(i) + " p=" + std::to_string(d.p));
    max_l = std::max(max_l, d.l);
  }
  const long max_q = page.max_weight();

  std::vector<int> row_height(static_cast<std::size_t>(max_q + 1), kLineHeight + 2 * kCellPad);
  for (const auto& [key, labels] : cells) {
    auto& h = row_height[static_cast<std::size_t>(key.second)];
    h = std::max(h, static_cast<int>(labels.size()) * kLineHeight + 2 * kCellPad);
  }
  // rows are drawn bottom-up, q = 0 at the bottom
  std::vector<int> row_top(row_height.size());
  int y = kMargin;
  for (long q = max_q; q >= 0; --q) {
    row_top[static_cast<std::size_t>(q)] = y;
    y += row_height[static_cast<std::size_t>(q)];
  }
  const int plot_bottom = y;
  const int plot_right = kMargin + static_cast<int>(max_l + 1) * kCellWidth;
  const int width = plot_right + kMargin;
  const int height = plot_bottom + kMargin;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<title>E2 " << escape(catalog::to_string(page.signature())) << " " << to_string(page.variant())
     << " q&lt;=" << page.max_weight() << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<g font-family=\"monospace\" font-size=\"11\">\n";

  for (long l = 0; l <= max_l + 1; ++l) {
    const int x = kMargin + static_cast<int>(l) * kCellWidth;
    os << "<line x1=\"" << x << "\" y1=\"" << kMargin << "\" x2=\"" << x << "\" y2=\"" << plot_bottom
       << "\" stroke=\"#dddddd\"/>\n";
  }
  for (long q = 0; q <= max_q; ++q) {
    const int top = row_top[static_cast<std::size_t>(q)];
    os << "<line x1=\"" << kMargin << "\" y1=\"" << top << "\" x2=\"" << plot_right << "\" y2=\"" << top
       << "\" stroke=\"#dddddd\"/>\n";
  }

  os << "<line x1=\"" << kMargin << "\" y1=\"" << plot_bottom << "\" x2=\"" << plot_right << "\" y2=\""
     << plot_bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << plot_bottom
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << plot_right + 10 << "\" y=\"" << plot_bottom + 4 << "\">l</text>\n";
  os << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin - 10 << "\">q</text>\n";

  for (long l = 0; l <= max_l; ++l)
    os << "<text x=\"" << kMargin + static_cast<int>(l) * kCellWidth + kCellWidth / 2 << "\" y=\""
       << plot_bottom + 16 << "\" text-anchor=\"middle\">" << l << "</text>\n";
  for (long q = 0; q <= max_q; ++q) {
    const int mid = row_top[static_cast<std::size_t>(q)] + row_height[static_cast<std::size_t>(q)] / 2 + 4;
    os << "<text x=\"" << kMargin - 8 << "\" y=\"" << mid << "\" text-anchor=\"end\">" << q << "</text>\n";
  }

  for (const auto& [key, labels] : cells) {
    const int x = kMargin + static_cast<int>(key.first) * kCellWidth + 4;
    int ty = row_top[static_cast<std::size_t>(key.second)] + kCellPad + kLineHeight - 3;
    for (const auto& label : labels) {
      os << "<text x=\"" << x << "\" y=\"" << ty << "\">" << escape(label) << "</text>\n";
      ty += kLineHeight;
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void chart_svg(const E2Page& page, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot open " + path.string() + " for writing");
  out << render_svg(page);
  out.close();
  if (!out)
    throw Error("failed writing " + path.string());
}

}  // namespace tatecalc::spectral
