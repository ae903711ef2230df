#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bacforge/error.hpp"
#include "bacforge/gel.hpp"

using namespace bacforge;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

// The mobility model written from scratch.
double reference_distance(double len, double h, double lo, double hi) {
  len = std::min(std::max(len, lo), hi);
  return h * (std::log(hi) - std::log(len)) / (std::log(hi) - std::log(lo));
}

}  // namespace

TEST_CASE("migration distance") {
  const GelParams p;
  CHECK(migration_distance(12000, p) == 0.0);
  CHECK(migration_distance(50, p) == 500.0);
  CHECK(migration_distance(20000, p) == 0.0);
  CHECK(migration_distance(10, p) == 500.0);
  for (std::size_t len = 50; len <= 12000; len += 37) {
    CHECK(migration_distance(len, p) == doctest::Approx(reference_distance(len, 500, 50, 12000)).epsilon(1e-12));
  }
  double prev = migration_distance(1, p);
  for (std::size_t len = 2; len <= 15000; ++len) {
    const double d = migration_distance(len, p);
    REQUIRE(d <= prev);
    prev = d;
  }
}

TEST_CASE("equal lengths land at equal distances in every lane") {
  const auto gel = build_gel({{"a", {4361, 320}}, {"b", {320, 4361}}}, GelParams{});
  REQUIRE(gel.lanes.size() == 3);
  CHECK(gel.lanes[0].ladder);
  CHECK(gel.lanes[1].bands[0].distance_px == gel.lanes[2].bands[1].distance_px);
  CHECK(gel.lanes[1].bands[1].distance_px == gel.lanes[2].bands[0].distance_px);
  CHECK(gel.lanes[1].bands[1].distance_px > gel.lanes[1].bands[0].distance_px);
}

TEST_CASE("parameter validation") {
  GelParams p;
  p.min_length_bp = 0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = GelParams{};
  p.min_length_bp = 12000;
  CHECK_THROWS_AS(p.validate(), Error);
  p = GelParams{};
  p.ladder.push_back(20000);
  CHECK_THROWS_AS(p.validate(), Error);
  CHECK_THROWS_AS(build_gel({}, GelParams{}), Error);
  CHECK_THROWS_AS(build_gel({{"z", {0}}}, GelParams{}), Error);
  CHECK(parse_gel_format("svg") == GelFormat::Svg);
  CHECK_THROWS_AS(parse_gel_format("png"), Error);
}

TEST_CASE("SVG rendering") {
  const auto gel = build_gel({{"clone<1>", {4341, 4361}}}, GelParams{});
  const auto svg = render_gel(gel, GelFormat::Svg);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count(svg, "class=\"band\"") == 12 + 2);
  CHECK(count(svg, "class=\"lane\"") == 2);
  CHECK(svg.find("clone&lt;1&gt;") != std::string::npos);
  CHECK(render_gel(gel, GelFormat::Svg) == svg);
}

TEST_CASE("text rendering") {
  const auto gel = build_gel({{"pBR322", {4361}}}, GelParams{});
  const auto text = render_gel(gel, GelFormat::Text, {60, 20});
  std::size_t lines = count(text, "\n");
  CHECK(lines == 21);
  CHECK(text.find("Ladder") != std::string::npos);
  CHECK(text.find("4361") != std::string::npos);
  CHECK(text.find("10000") != std::string::npos);
  CHECK(render_gel(gel, GelFormat::Text, {60, 20}) == text);
}
