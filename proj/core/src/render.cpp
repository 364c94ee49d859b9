#include "lensworks/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lensworks/errors.hpp"

namespace lensworks::render {

namespace {

std::string fmt(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite coordinate");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

Rect bounds_of(const std::vector<Circle>& circles) {
  if (circles.empty()) return {0.0, 0.0, 1.0, 1.0};
  Rect r{std::numeric_limits<double>::infinity(),
         std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity()};
  for (const Circle& c : circles) {
    r.x0 = std::min(r.x0, c.center.x - c.radius);
    r.y0 = std::min(r.y0, c.center.y - c.radius);
    r.x1 = std::max(r.x1, c.center.x + c.radius);
    r.y1 = std::max(r.y1, c.center.y + c.radius);
  }
  return r;
}

}  // namespace

Scene scene_from_circles(const std::vector<Circle>& circles, const Style& style) {
  std::vector<Circle> sorted = circles;
  std::sort(sorted.begin(), sorted.end(), [](const Circle& a, const Circle& b) {
    return a.level != b.level ? a.level < b.level : a.id < b.id;
  });

  Scene scene;
  scene.viewbox = bounds_of(sorted).expanded(style.stroke_width);
  scene.stroke_width = style.stroke_width;
  scene.metadata = "lensworks scene";

  std::map<int, Layer> by_level;
  for (const Circle& c : sorted) {
    auto [it, inserted] = by_level.try_emplace(c.level);
    if (inserted) {
      it->second.name = "level-" + std::to_string(c.level);
      it->second.opacity =
          style.base_fill_opacity * std::pow(style.opacity_decay, c.level);
    }
    it->second.circles.push_back({c, style.stroke, style.fill, it->second.opacity});
  }
  // One layer if the input is empty, so the scene is never layerless.
  if (by_level.empty()) {
    scene.layers.push_back({"level-0", style.base_fill_opacity, {}, {}});
    return scene;
  }
  for (auto& [level, layer] : by_level) scene.layers.push_back(std::move(layer));
  return scene;
}

Scene scene_from_surface(const surface::SurfaceState& s, const Palette& palette) {
  const auto& lat = s.lattice;
  Scene scene;
  scene.viewbox = Rect{-lat.r, -lat.r, 2.0 * lat.r * lat.bw + lat.r,
                       2.0 * lat.r * lat.bh + lat.r};
  scene.metadata = "lensworks surface scene";

  Layer circles{"packings", 1.0, {}, {}};
  for (const Circle& c : lat.circles()) {
    const std::string& stroke =
        c.packing == Packing::A ? palette.a_stroke : palette.b_stroke;
    circles.circles.push_back({c, stroke, "none", 0.0});
  }

  Layer lenses{"lenses", 1.0, {}, {}};
  for (int l = 0; l < lat.lens_rows(); ++l) {
    for (int k = 0; k < lat.lens_cols(); ++k) {
      // Owning circles by arithmetic (unwrapped) position: the nearest A and
      // B centers to the lens, which are the circles whose arcs bound it.
      int ia = (k + 1) / 2, ja = (l + 1) / 2;
      int ib = k / 2, jb = l / 2;
      LensShape shape;
      shape.k = k;
      shape.l = l;
      shape.value = s.value(k, l);
      shape.a_center = {2.0 * lat.r * ia, 2.0 * lat.r * ja};
      shape.b_center = {2.0 * lat.r * ib + lat.r, 2.0 * lat.r * jb + lat.r};
      shape.r = lat.r;
      lenses.lenses.push_back(shape);
    }
  }
  scene.layers.push_back(std::move(circles));
  scene.layers.push_back(std::move(lenses));
  scene.lens_fill_on = palette.lens_on;
  scene.lens_fill_off = palette.lens_off;
  return scene;
}

namespace {

/// Lens outline: the two crossing points of perpendicular circles (center
/// distance r*sqrt(2)) joined by the minor arc of each circle.
std::string lens_path(const LensShape& lens) {
  Vec2 d = lens.b_center - lens.a_center;
  double dist = d.norm();
  Vec2 u{d.x / dist, d.y / dist};
  Vec2 perp{-u.y, u.x};
  Vec2 mid = (lens.a_center + lens.b_center) * 0.5;
  double h = std::sqrt(std::max(0.0, lens.r * lens.r - dist * dist / 4.0));
  Vec2 p1 = mid + perp * h;
  Vec2 p2 = mid - perp * h;

  auto sweep_about = [&](const Vec2& center) {
    Vec2 v1 = p1 - center, v2 = p2 - center;
    return v1.x * v2.y - v1.y * v2.x > 0 ? 1 : 0;
  };
  std::string r = fmt(lens.r);
  return "M " + fmt(p1.x) + " " + fmt(p1.y) + " A " + r + " " + r + " 0 0 " +
         std::to_string(sweep_about(lens.a_center)) + " " + fmt(p2.x) + " " +
         fmt(p2.y) + " A " + r + " " + r + " 0 0 " +
         std::to_string(1 - sweep_about(lens.b_center)) + " " + fmt(p1.x) + " " +
         fmt(p1.y) + " Z";
}

}  // namespace

std::string svg_string(const Scene& scene) {
  if (scene.viewbox.empty()) throw std::invalid_argument("empty viewbox");
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<!-- " << scene.metadata << " -->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
      << fmt(scene.viewbox.x0) << " " << fmt(scene.viewbox.y0) << " "
      << fmt(scene.viewbox.width()) << " " << fmt(scene.viewbox.height())
      << "\">\n";
  for (const Layer& layer : scene.layers) {
    out << "  <g id=\"" << layer.name << "\">\n";
    for (const StyledCircle& sc : layer.circles) {
      out << "    <circle cx=\"" << fmt(sc.circle.center.x) << "\" cy=\""
          << fmt(sc.circle.center.y) << "\" r=\"" << fmt(sc.circle.radius)
          << "\" stroke=\"" << sc.stroke << "\" stroke-width=\""
          << fmt(scene.stroke_width) << "\" fill=\"" << sc.fill << "\"";
      if (sc.fill != "none") out << " fill-opacity=\"" << fmt(sc.fill_opacity) << "\"";
      out << "/>\n";
    }
    for (const LensShape& lens : layer.lenses) {
      const std::string& fill =
          lens.value ? scene.lens_fill_on : scene.lens_fill_off;
      out << "    <path d=\"" << lens_path(lens) << "\" stroke=\"#666666\""
          << " stroke-width=\"" << fmt(scene.stroke_width / 2.0) << "\" fill=\""
          << fill << "\"/>\n";
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const Scene& scene, const std::string& path) {
  std::string text = svg_string(scene);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace lensworks::render
