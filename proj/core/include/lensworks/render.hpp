#ifndef LENSWORKS_RENDER_HPP
#define LENSWORKS_RENDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lensworks/geometry.hpp"
#include "lensworks/surface.hpp"

namespace lensworks::render {

struct Style {
  double stroke_width = 0.02;
  double base_fill_opacity = 0.85;
  double opacity_decay = 0.55;  // per-level multiplier, Fig-2 style fading
  std::string stroke = "#333333";
  std::string fill = "#cc4444";
};

struct Palette {
  std::string a_stroke = "#d64541";  // A packing: red family
  std::string b_stroke = "#4a69bd";  // B packing: blue family
  std::string lens_on = "#2c3e50";
  std::string lens_off = "none";
};

struct StyledCircle {
  Circle circle;
  std::string stroke;
  std::string fill;
  double fill_opacity = 1.0;
};

/// A lens drawn as the true intersection region of its two perpendicular
/// circles (two circular-arc segments through the crossing points).
struct LensShape {
  int k = 0, l = 0;
  std::uint8_t value = 0;
  Vec2 a_center, b_center;
  double r = 1.0;
};

struct Layer {
  std::string name;
  double opacity = 1.0;
  std::vector<StyledCircle> circles;
  std::vector<LensShape> lenses;
};

/// Deterministic scene: element order is fixed, coordinates serialize at
/// 6 decimals, identical input yields byte-identical SVG.
struct Scene {
  Rect viewbox;
  std::vector<Layer> layers;
  std::string metadata;  // embedded as a comment: generator, seed, parameters
  double stroke_width = 0.02;
  std::string lens_fill_on = "#2c3e50";
  std::string lens_fill_off = "none";
};

/// One layer per fractal level (circles sorted by level, then id); fill
/// opacity decreases geometrically with level.
Scene scene_from_circles(const std::vector<Circle>& circles, const Style& style = {});

/// A/B circles in red/blue families plus one lens shape per lattice lens,
/// filled according to its value.
Scene scene_from_surface(const surface::SurfaceState& s, const Palette& palette = {});

std::string svg_string(const Scene& scene);
void write_svg(const Scene& scene, const std::string& path);

}  // namespace lensworks::render

#endif  // LENSWORKS_RENDER_HPP
