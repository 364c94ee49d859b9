#include <regex>

#include "doctest.h"
#include "lensworks/fractal.hpp"
#include "lensworks/render.hpp"
#include "lensworks/surface.hpp"

using namespace lensworks;
using namespace lensworks::render;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("scene_from_circles layering") {
  SUBCASE("empty input still has one layer") {
    auto scene = scene_from_circles({});
    REQUIRE(scene.layers.size() == 1);
    CHECK(scene.layers[0].circles.empty());
  }
  SUBCASE("fractal levels map to layers with strictly decreasing opacity") {
    auto levels = fractal::fractal_t(3, Rect{-4, -4, 4, 4});
    std::vector<Circle> all;
    for (const auto& lv : levels) {
      all.insert(all.end(), lv.circles.begin(), lv.circles.end());
    }
    auto scene = scene_from_circles(all);
    REQUIRE(scene.layers.size() == 4);
    for (std::size_t i = 1; i < scene.layers.size(); ++i) {
      CHECK(scene.layers[i].opacity < scene.layers[i - 1].opacity);
    }
  }
}

TEST_CASE("svg output is deterministic and complete") {
  Circle one{0, {0.5, -0.25}, 1.0, 0.0, 0, Packing::None};
  auto scene = scene_from_circles({one});
  std::string a = svg_string(scene);
  std::string b = svg_string(scene);
  CHECK(a == b);
  CHECK(count_occurrences(a, "<circle") == 1);

  auto big = fractal::athena_curve({0, {0, 0}, 1.0, M_PI / 2.0, 0, Packing::None}, 5);
  auto big_scene = scene_from_circles(big.circles);
  CHECK(count_occurrences(svg_string(big_scene), "<circle") == big.circles.size());
}

TEST_CASE("surface scene has one lens element per lens") {
  auto s = surface::build_square2_surface(1.0, 2, 2);
  s.set_value(1, 1, 1);
  auto scene = scene_from_surface(s);
  std::string svg = svg_string(scene);
  CHECK(count_occurrences(svg, "<path") == 16);
  CHECK(count_occurrences(svg, "<circle") == 8);  // 4 A + 4 B in the unit
  CHECK(count_occurrences(svg, "fill=\"#2c3e50\"") == 1);  // exactly one set lens
}

TEST_CASE("numeric hygiene") {
  SUBCASE("no coordinate has more than 6 decimals") {
    auto scene = scene_from_circles(surface::build_tri_packing(1.0 / 3.0, 3, 3));
    std::string svg = svg_string(scene);
    std::regex too_precise("\\.[0-9]{7,}");
    CHECK(!std::regex_search(svg, too_precise));
  }
  SUBCASE("non-finite coordinates are rejected") {
    Circle bad{0, {std::nan(""), 0.0}, 1.0, 0.0, 0, Packing::None};
    auto scene = scene_from_circles({bad});
    CHECK_THROWS_AS(svg_string(scene), std::invalid_argument);
  }
}
