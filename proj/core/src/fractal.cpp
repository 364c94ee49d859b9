#include "lensworks/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lensworks/errors.hpp"
#include "lensworks/random.hpp"
#include "lensworks/spatial_hash.hpp"
#include "lensworks/surface.hpp"

namespace lensworks::fractal {

double scale() { return std::tan(M_PI / 6.0); }

namespace {

const double kCos30 = std::cos(M_PI / 6.0);
const double kSin30 = std::sin(M_PI / 6.0);

std::int64_t pow3_capped(int x, std::int64_t cap) {
  std::int64_t n = 1;
  for (int i = 0; i < x; ++i) {
    if (n > cap / 3) return cap + 1;
    n *= 3;
  }
  return n;
}

}  // namespace

Vec2 apply_map(const Vec2& p) {
  double s = scale();
  return {s * (kCos30 * p.x + kSin30 * p.y), s * (-kSin30 * p.x + kCos30 * p.y)};
}

Vec2 apply_inverse_map(const Vec2& p) {
  double s = scale();
  return {(kCos30 * p.x - kSin30 * p.y) / s, (kSin30 * p.x + kCos30 * p.y) / s};
}

std::vector<Circle> base_packing_over(const Rect& region, double r) {
  if (r <= 0) throw std::invalid_argument("radius must be positive");
  std::vector<Circle> out;
  double pitch = r * std::sqrt(3.0);
  int j0 = static_cast<int>(std::floor(region.y0 / pitch));
  int j1 = static_cast<int>(std::ceil(region.y1 / pitch));
  std::int64_t id = 0;
  for (int j = j0; j <= j1; ++j) {
    double off = (((j % 2) + 2) % 2 == 1) ? r : 0.0;
    int i0 = static_cast<int>(std::floor((region.x0 - off) / (2.0 * r)));
    int i1 = static_cast<int>(std::ceil((region.x1 - off) / (2.0 * r)));
    for (int i = i0; i <= i1; ++i) {
      Vec2 c{off + 2.0 * r * i, pitch * j};
      if (!region.contains(c)) continue;
      out.push_back({id++, c, r, M_PI / 2.0, 0, Packing::None});
    }
  }
  return out;
}

FractalLevel next_level(const FractalLevel& lv) {
  if (lv.circles.empty()) throw std::invalid_argument("empty fractal level");
  FractalLevel out;
  out.level = lv.level + 1;
  out.circles.reserve(lv.circles.size());
  for (const Circle& c : lv.circles) {
    out.circles.push_back({c.id, apply_map(c.center), c.radius * scale(),
                           c.polarity - M_PI / 6.0, c.level + 1, Packing::None});
  }
  return out;
}

FractalLevel previous_level(const FractalLevel& lv) {
  if (lv.circles.empty()) throw std::invalid_argument("empty fractal level");
  FractalLevel out;
  out.level = lv.level - 1;
  out.circles.reserve(lv.circles.size());
  for (const Circle& c : lv.circles) {
    out.circles.push_back({c.id, apply_inverse_map(c.center), c.radius / scale(),
                           c.polarity + M_PI / 6.0, c.level - 1, Packing::None});
  }
  return out;
}

std::vector<FractalLevel> fractal_t(int levels, const Rect& window,
                                    double base_radius) {
  if (levels < 0) throw std::invalid_argument("levels must be >= 0");
  if (window.empty()) throw std::invalid_argument("window must be nonempty");
  double r = base_radius;
  std::vector<FractalLevel> out;
  out.reserve(levels + 1);
  for (int k = 0; k <= levels; ++k) {
    // The base must cover the inverse image of the window so that level k is
    // complete over the window (the map contracts; a clipped base would
    // under-cover deeper levels).
    double rk = r * std::pow(scale(), k);
    Rect target = window.expanded(rk + r);
    Vec2 corners[4] = {{target.x0, target.y0}, {target.x1, target.y0},
                       {target.x0, target.y1}, {target.x1, target.y1}};
    Rect pre{std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
    for (Vec2 p : corners) {
      for (int i = 0; i < k; ++i) p = apply_inverse_map(p);
      pre.x0 = std::min(pre.x0, p.x);
      pre.y0 = std::min(pre.y0, p.y);
      pre.x1 = std::max(pre.x1, p.x);
      pre.y1 = std::max(pre.y1, p.y);
    }
    FractalLevel lv{0, base_packing_over(pre.expanded(2.0 * r), r)};
    for (int i = 0; i < k; ++i) lv = next_level(lv);
    FractalLevel clipped{k, {}};
    for (const Circle& c : lv.circles) {
      if (circle_intersects_rect(c, window)) clipped.circles.push_back(c);
    }
    for (std::size_t i = 0; i < clipped.circles.size(); ++i) {
      clipped.circles[i].id = static_cast<std::int64_t>(i);
    }
    out.push_back(std::move(clipped));
  }
  return out;
}

std::array<Circle, 3> athena_step(const Circle& c) {
  if (c.radius <= 0) throw std::invalid_argument("radius must be positive");
  double rc = c.radius * scale();
  Vec2 axis{std::cos(c.polarity), std::sin(c.polarity)};
  Vec2 offset = axis * (2.0 * rc);
  double pc = c.polarity + M_PI / 6.0;
  int lv = c.level + 1;
  return {{{3 * c.id + 0, c.center + offset, rc, pc, lv, Packing::None},
           {3 * c.id + 1, c.center, rc, pc, lv, Packing::None},
           {3 * c.id + 2, c.center - offset, rc, pc, lv, Packing::None}}};
}

AthenaCurve athena_curve(const Circle& seed, int x, std::int64_t cap) {
  if (x < 0) throw std::invalid_argument("iterations must be >= 0");
  if (pow3_capped(x, cap) > cap) {
    throw ResourceError("athena curve would exceed the circle cap");
  }
  AthenaCurve curve{seed, x, {seed}};
  for (int i = 0; i < x; ++i) {
    std::vector<Circle> next;
    next.reserve(curve.circles.size() * 3);
    for (const Circle& c : curve.circles) {
      auto kids = athena_step(c);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    curve.circles = std::move(next);
  }
  return curve;
}

MeasureReport measures(std::span<const Circle> circles) {
  MeasureReport r;
  r.circle_count = circles.size();
  for (const Circle& c : circles) {
    r.total_area += M_PI * c.radius * c.radius;
    r.total_length += 2.0 * M_PI * c.radius;
  }
  return r;
}

OverlapReport overlap_report(const std::vector<Circle>& circles, double tol) {
  if (tol < 0) throw std::invalid_argument("tolerance must be >= 0");
  OverlapReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  if (circles.size() < 2) return report;

  double max_r = 0.0;
  for (const Circle& c : circles) max_r = std::max(max_r, c.radius);
  SpatialHash hash(2.0 * max_r);
  for (std::size_t i = 0; i < circles.size(); ++i) hash.insert(circles[i].center, i);

  for (std::size_t i = 0; i < circles.size(); ++i) {
    hash.for_neighbors(circles[i].center, [&](std::size_t j) {
      if (j <= i) return;
      double d = circles[i].center.dist(circles[j].center);
      double gap = d - circles[i].radius - circles[j].radius;
      report.min_gap = std::min(report.min_gap, gap);
      if (gap < -tol) report.overlapping.emplace_back(i, j);
    });
  }
  std::sort(report.overlapping.begin(), report.overlapping.end());
  return report;
}

namespace {

// The pad keeps centers that sit exactly on the region boundary (lattice
// points hit it) from flipping in or out under ~1e-16 rotation jitter.
std::vector<Circle> filter_to(const std::vector<Circle>& circles, const Rect& region,
                              double pad) {
  Rect padded = region.expanded(pad);
  std::vector<Circle> out;
  for (const Circle& c : circles) {
    if (padded.contains(c.center)) out.push_back(c);
  }
  return out;
}

/// Interior margin excluding boundary-affected circles: children drift from
/// their seed by at most sum_k 2*r*s^k < 2*r*s/(1-s) ~ 2.74*r.
double interior_margin(double r) { return 3.0 * r; }

}  // namespace

TilingReport tiling_check(int x, int rows, int cols, double tol, double base_radius) {
  if (x < 0) throw std::invalid_argument("iterations must be >= 0");
  auto seeds = surface::build_tri_packing(base_radius, rows, cols);

  Rect window{std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity()};
  for (const Circle& c : seeds) {
    window.x0 = std::min(window.x0, c.center.x);
    window.y0 = std::min(window.y0, c.center.y);
    window.x1 = std::max(window.x1, c.center.x);
    window.y1 = std::max(window.y1, c.center.y);
  }
  Rect interior = window.shrunk(interior_margin(base_radius));
  if (interior.empty()) throw std::invalid_argument("patch too small for an interior");

  std::vector<Circle> curve_union;
  for (const Circle& seed : seeds) {
    auto curve = athena_curve(seed, x);
    curve_union.insert(curve_union.end(), curve.circles.begin(), curve.circles.end());
  }
  double pad = 1e-7 * base_radius;
  auto a = filter_to(curve_union, interior, pad);
  auto b = filter_to(fractal_t(x, window, base_radius)[x].circles, interior, pad);

  auto match = match_multisets(a, b, tol);
  TilingReport report;
  report.equal = match.equal;
  report.unmatched = match.unmatched_a.size() + match.unmatched_b.size();
  report.matched = a.size() - match.unmatched_a.size();
  return report;
}

OmegaTReport omega_equals_t(int levels, const Rect& window, double tol,
                            double base_radius) {
  if (levels < 0) throw std::invalid_argument("levels must be >= 0");
  Rect interior = window.shrunk(interior_margin(base_radius));
  if (interior.empty()) throw std::invalid_argument("window too small for an interior");

  auto base = base_packing_over(window.expanded(2.0 * base_radius), base_radius);
  auto t = fractal_t(levels, window, base_radius);

  std::vector<Circle> omega = base;
  for (int x = 0; x <= levels; ++x) {
    double pad = 1e-7 * base_radius;
    auto a = filter_to(omega, interior, pad);
    auto b = filter_to(t[x].circles, interior, pad);
    if (!match_multisets(a, b, tol).equal) return {false, x};
    if (x == levels) break;
    std::vector<Circle> next;
    next.reserve(omega.size() * 3);
    for (const Circle& c : omega) {
      auto kids = athena_step(c);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    omega = std::move(next);
  }
  return {true, -1};
}

SymmetryReport radial_symmetry_probe(const std::vector<FractalLevel>& lv_set,
                                     int target_level, const Rect& window,
                                     double base_radius) {
  if (target_level < 0 || target_level >= static_cast<int>(lv_set.size())) {
    throw std::invalid_argument("target level not present");
  }
  Rect safe = window.shrunk(base_radius);
  const double eps = 1e-6 * base_radius;  // excludes exact tangencies
  const double match_tol = 1e-6 * base_radius;

  SymmetryReport report;
  const double cos120 = std::cos(2.0 * M_PI / 3.0);
  const double sin120 = std::sin(2.0 * M_PI / 3.0);

  for (const Circle& target : lv_set[target_level].circles) {
    if (!safe.contains(target.center)) continue;
    ++report.targets;
    bool symmetric = true;
    for (int k = 0; k < target_level && symmetric; ++k) {
      std::vector<Circle> rel, rotated;
      for (const Circle& q : lv_set[k].circles) {
        double d = q.center.dist(target.center);
        if (d > q.radius - target.radius + eps && d < q.radius + target.radius - eps) {
          Vec2 p = q.center - target.center;
          rel.push_back({0, p, q.radius, 0.0, 0, Packing::None});
          rotated.push_back({0,
                             {cos120 * p.x - sin120 * p.y, sin120 * p.x + cos120 * p.y},
                             q.radius, 0.0, 0, Packing::None});
        }
      }
      if (!match_multisets(rel, rotated, match_tol).equal) symmetric = false;
    }
    if (!symmetric) ++report.asymmetric;
  }
  return report;
}

CoverageEstimate union_area_estimate(int x_max, std::int64_t samples,
                                     std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (pow3_capped(x_max, kCurveCap) > kCurveCap) {
    throw ResourceError("x_max exceeds the circle cap");
  }

  Circle unit{0, {0.0, 0.0}, 1.0, M_PI / 2.0, 0, Packing::None};
  struct LevelIndex {
    double radius;
    std::vector<Vec2> centers;
    SpatialHash hash;
  };
  std::vector<LevelIndex> levels;
  std::vector<Circle> cur{unit};
  for (int x = 0; x <= x_max; ++x) {
    LevelIndex idx{cur.front().radius, {}, SpatialHash(cur.front().radius)};
    for (std::size_t i = 0; i < cur.size(); ++i) {
      idx.centers.push_back(cur[i].center);
      idx.hash.insert(cur[i].center, i);
    }
    levels.push_back(std::move(idx));
    if (x == x_max) break;
    std::vector<Circle> next;
    next.reserve(cur.size() * 3);
    for (const Circle& c : cur) {
      auto kids = athena_step(c);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    cur = std::move(next);
  }

  auto covered = [&](const Vec2& p) {
    for (const auto& lv : levels) {
      bool hit = false;
      lv.hash.for_neighbors(p, [&](std::size_t i) {
        if (!hit && p.dist(lv.centers[i]) <= lv.radius) hit = true;
      });
      if (hit) return true;
    }
    return false;
  };

  // Fixed partition layout so the estimate is a pure function of the seed.
  constexpr std::int64_t kPartitions = 64;
  std::int64_t hits = 0;
  for (std::int64_t part = 0; part < kPartitions; ++part) {
    std::int64_t n = samples / kPartitions + (part < samples % kPartitions ? 1 : 0);
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(part)));
    for (std::int64_t i = 0; i < n; ++i) {
      Vec2 p{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
      if (covered(p)) ++hits;
    }
  }

  CoverageEstimate est;
  est.samples = samples;
  est.mean = static_cast<double>(hits) / static_cast<double>(samples);
  est.stderr_ = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(samples));
  return est;
}

}  // namespace lensworks::fractal
