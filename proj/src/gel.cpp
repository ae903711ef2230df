#include "bacforge/gel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bacforge/error.hpp"

namespace bacforge {
namespace {

constexpr double kLaneWidth = 80.0;
constexpr double kLaneGap = 20.0;
constexpr double kTopMargin = 40.0;
constexpr double kSideMargin = 20.0;
constexpr double kBandHeight = 6.0;

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string render_svg(const GelImage& gel) {
  const double height = static_cast<double>(gel.params.lane_height_px);
  const double width = 2 * kSideMargin + static_cast<double>(gel.lanes.size()) * (kLaneWidth + kLaneGap) - kLaneGap;
  const double total_h = kTopMargin + height + 2 * kBandHeight + 10.0;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width) << "\" height=\""
      << fmt(total_h) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(total_h) << "\">\n";
  out << "  <rect class=\"gel\" x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(total_h)
      << "\" fill=\"#1b1b2f\"/>\n";
  for (std::size_t i = 0; i < gel.lanes.size(); ++i) {
    const auto& lane = gel.lanes[i];
    const double x = kSideMargin + static_cast<double>(i) * (kLaneWidth + kLaneGap);
    out << "  <g class=\"lane\" data-lane=\"" << xml_escape(lane.label) << "\">\n";
    out << "    <text x=\"" << fmt(x + kLaneWidth / 2) << "\" y=\"16\" fill=\"#e0e0e0\" font-size=\"11\" "
        << "text-anchor=\"middle\">" << xml_escape(lane.label) << "</text>\n";
    out << "    <rect class=\"well\" x=\"" << fmt(x) << "\" y=\"" << fmt(kTopMargin - 12) << "\" width=\""
        << fmt(kLaneWidth) << "\" height=\"8\" fill=\"#444466\"/>\n";
    for (const auto& band : lane.bands) {
      const double y = kTopMargin + band.distance_px;
      out << "    <rect class=\"band\" data-lane=\"" << xml_escape(lane.label) << "\" data-length=\""
          << band.length_bp << "\" x=\"" << fmt(x + 4) << "\" y=\"" << fmt(y) << "\" width=\""
          << fmt(kLaneWidth - 8) << "\" height=\"" << fmt(kBandHeight) << "\" fill=\""
          << (lane.ladder ? "#9fd3ff" : "#ffb3e6") << "\"/>\n";
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_text(const GelImage& gel, const TextGridOptions& opt) {
  const std::size_t margin = 6;
  const std::size_t lanes = std::max<std::size_t>(1, gel.lanes.size());
  const std::size_t rows = std::max<std::size_t>(2, opt.rows);
  const std::size_t cell = std::max<std::size_t>(8, (opt.columns > margin ? opt.columns - margin : 0) / lanes);
  const std::size_t width = std::max(opt.columns, margin + cell * lanes);

  std::vector<std::string> grid(rows + 1, std::string(width, ' '));
  // Header: lane labels.
  for (std::size_t i = 0; i < gel.lanes.size(); ++i) {
    const std::string label = gel.lanes[i].label.substr(0, cell - 1);
    grid[0].replace(margin + i * cell, label.size(), label);
  }
  const double height = static_cast<double>(gel.params.lane_height_px);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string tick = std::to_string(static_cast<long>(std::lround(height * static_cast<double>(r) /
                                                                          static_cast<double>(rows - 1))));
    grid[r + 1].replace(0, std::min(tick.size(), margin - 1), tick.substr(0, margin - 1));
    for (std::size_t i = 0; i < gel.lanes.size(); ++i) grid[r + 1][margin + i * cell] = '|';
  }
  for (std::size_t i = 0; i < gel.lanes.size(); ++i) {
    for (const auto& band : gel.lanes[i].bands) {
      const auto row = static_cast<std::size_t>(
          std::lround(band.distance_px / height * static_cast<double>(rows - 1)));
      std::string mark(cell - 2, '=');
      const std::string num = std::to_string(band.length_bp);
      if (num.size() + 2 <= mark.size()) mark.replace((mark.size() - num.size()) / 2, num.size(), num);
      grid[row + 1].replace(margin + i * cell + 1, mark.size(), mark);
    }
  }
  std::string out;
  for (auto& line : grid) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

void GelParams::validate() const {
  if (min_length_bp == 0 || min_length_bp >= max_length_bp) {
    throw Error(ErrorCode::BadInput, "gel parameters require 0 < min_length_bp < max_length_bp");
  }
  if (lane_height_px == 0) throw Error(ErrorCode::BadInput, "lane height must be positive");
  for (auto l : ladder) {
    if (l < min_length_bp || l > max_length_bp) {
      throw Error(ErrorCode::BadInput, "ladder value " + std::to_string(l) + " outside gel range");
    }
  }
}

GelFormat parse_gel_format(std::string_view name) {
  if (name == "svg") return GelFormat::Svg;
  if (name == "text" || name == "txt") return GelFormat::Text;
  throw Error(ErrorCode::BadInput, "unknown gel format '" + std::string(name) + "' (expected svg or text)");
}

double migration_distance(std::size_t length_bp, const GelParams& p) {
  const double lo = std::log(static_cast<double>(p.min_length_bp));
  const double hi = std::log(static_cast<double>(p.max_length_bp));
  const std::size_t clamped = std::clamp(length_bp, p.min_length_bp, p.max_length_bp);
  if (clamped == p.max_length_bp) return 0.0;
  if (clamped == p.min_length_bp) return static_cast<double>(p.lane_height_px);
  return static_cast<double>(p.lane_height_px) * (hi - std::log(static_cast<double>(clamped))) / (hi - lo);
}

GelImage build_gel(const std::vector<GelLane>& lanes, const GelParams& params) {
  if (lanes.empty()) throw Error(ErrorCode::BadInput, "gel needs at least one lane");
  params.validate();
  GelImage gel{params, {}};
  GelLaneModel ladder{"Ladder", true, {}};
  for (auto l : params.ladder) ladder.bands.push_back({l, migration_distance(l, params)});
  gel.lanes.push_back(std::move(ladder));
  for (const auto& lane : lanes) {
    GelLaneModel m{lane.label, false, {}};
    for (auto l : lane.fragment_lengths) {
      if (l == 0) throw Error(ErrorCode::BadInput, "fragment length must be at least 1 bp");
      m.bands.push_back({l, migration_distance(l, params)});
    }
    gel.lanes.push_back(std::move(m));
  }
  return gel;
}

std::string render_gel(const GelImage& gel, GelFormat format, const TextGridOptions& text) {
  return format == GelFormat::Svg ? render_svg(gel) : render_text(gel, text);
}

}  // namespace bacforge
