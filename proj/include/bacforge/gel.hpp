#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bacforge {

struct GelParams {
  std::size_t lane_height_px = 500;
  std::size_t min_length_bp = 50;
  std::size_t max_length_bp = 12000;
  std::vector<std::size_t> ladder = {250, 500, 750, 1000, 1500, 2000, 3000, 4000, 5000, 6000, 8000, 10000};

  /// Throws ErrorCode::BadInput when the invariants do not hold.
  void validate() const;
};

struct GelLane {
  std::string label;
  std::vector<std::size_t> fragment_lengths;
};

struct GelBand {
  std::size_t length_bp = 0;
  double distance_px = 0.0;
};

struct GelLaneModel {
  std::string label;
  bool ladder = false;
  std::vector<GelBand> bands;
};

struct GelImage {
  GelParams params;
  std::vector<GelLaneModel> lanes;  // ladder first
};

enum class GelFormat { Svg, Text };
GelFormat parse_gel_format(std::string_view name);

/// Log-linear mobility, clamped to [min_length_bp, max_length_bp]:
/// 0 at the longest fragment, lane_height_px at the shortest.
double migration_distance(std::size_t length_bp, const GelParams& params);

GelImage build_gel(const std::vector<GelLane>& lanes, const GelParams& params);

struct TextGridOptions {
  std::size_t columns = 80;
  std::size_t rows = 40;
};

std::string render_gel(const GelImage& gel, GelFormat format, const TextGridOptions& text = {});

}  // namespace bacforge
