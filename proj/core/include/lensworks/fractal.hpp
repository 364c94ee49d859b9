#ifndef LENSWORKS_FRACTAL_HPP
#define LENSWORKS_FRACTAL_HPP

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lensworks/geometry.hpp"

namespace lensworks::fractal {

/// Per-iteration scale factor tan(pi/6); children are smaller by this.
double scale();

/// The iteration map: rotation by -pi/6 composed with uniform scale tan(pi/6).
Vec2 apply_map(const Vec2& p);
Vec2 apply_inverse_map(const Vec2& p);

struct FractalLevel {
  int level = 0;
  std::vector<Circle> circles;  // all radii equal r * scale()^level
};

/// Canonical triangular packing (rows y = j*r*sqrt(3), odd rows offset +r)
/// restricted to circles whose center lies in `region`; polarity +pi/2.
std::vector<Circle> base_packing_over(const Rect& region, double r);

/// Maps every circle one level down: centers through the iteration map,
/// radii scaled by tan(pi/6), level incremented.
FractalLevel next_level(const FractalLevel& lv);
FractalLevel previous_level(const FractalLevel& lv);

/// Levels 0..levels of the fractal, each restricted to circles intersecting
/// `window`. Every level is complete over the window: its generating base
/// covers the inverse image of the window, not just the window itself.
std::vector<FractalLevel> fractal_t(int levels, const Rect& window,
                                    double base_radius = 1.0);

/// Production rule: three children of radius r*tan(pi/6), stacked along the
/// polarity axis (above, concentric, below), polarities advanced by +pi/6.
std::array<Circle, 3> athena_step(const Circle& c);

struct AthenaCurve {
  Circle seed;
  int iterations = 0;
  std::vector<Circle> circles;  // 3^iterations entries
};

inline constexpr std::int64_t kCurveCap = std::int64_t{1} << 24;

/// x-fold application of athena_step to every circle. Throws ResourceError
/// when 3^x would exceed `cap`.
AthenaCurve athena_curve(const Circle& seed, int x, std::int64_t cap = kCurveCap);

struct MeasureReport {
  double total_area = 0.0;    // sum of pi*r^2
  double total_length = 0.0;  // sum of circumferences 2*pi*r
  std::size_t circle_count = 0;
};

MeasureReport measures(std::span<const Circle> circles);

struct OverlapReport {
  std::vector<std::pair<std::size_t, std::size_t>> overlapping;  // i < j
  double min_gap = 0.0;  // over examined neighbor pairs; +inf if none
};

/// Pair (i,j) is flagged iff center distance < r_i + r_j - tol. Broad phase
/// is a uniform spatial grid, near-linear in circle count.
OverlapReport overlap_report(const std::vector<Circle>& circles, double tol);

struct TilingReport {
  bool equal = false;
  std::size_t matched = 0;
  std::size_t unmatched = 0;
};

/// Places one Athena curve (iteration x) at every circle of a rows x cols
/// triangular patch and compares the resulting circles, on the interior of
/// the patch, against the fractal's level x as a tolerance-matched multiset.
TilingReport tiling_check(int x, int rows, int cols, double tol,
                          double base_radius = 1.0);

struct OmegaTReport {
  bool equal = false;
  int first_mismatch_level = -1;
};

/// For each x <= levels, compares the union of Athena curves grown from
/// every base circle with the fractal's level x, restricted to the window
/// interior.
OmegaTReport omega_equals_t(int levels, const Rect& window, double tol,
                            double base_radius = 1.0);

struct SymmetryReport {
  int asymmetric = 0;
  int targets = 0;
};

/// For each circle at `target_level` (away from the window boundary),
/// collects the circles of shallower levels whose boundary arc crosses the
/// target disk and tests the arrangement for invariance under rotation by
/// 2*pi/3 about the target center. Tangent circles do not cut arcs and are
/// excluded.
SymmetryReport radial_symmetry_probe(const std::vector<FractalLevel>& lv_set,
                                     int target_level, const Rect& window,
                                     double base_radius = 1.0);

struct CoverageEstimate {
  double mean = 0.0;    // covered fraction of the seed circle's bounding square
  double stderr_ = 0.0;
  std::int64_t samples = 0;
};

/// Monte-Carlo estimate of the fraction of the seed circle's bounding square
/// covered by the union of iterations 0..x_max of one Athena curve (unit
/// seed). Sampling is partitioned with derived per-partition seeds, so the
/// estimate does not depend on how partitions are executed.
CoverageEstimate union_area_estimate(int x_max, std::int64_t samples,
                                     std::uint64_t seed);

}  // namespace lensworks::fractal

#endif  // LENSWORKS_FRACTAL_HPP
