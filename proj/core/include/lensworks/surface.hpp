#ifndef LENSWORKS_SURFACE_HPP
#define LENSWORKS_SURFACE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lensworks/ca.hpp"
#include "lensworks/geometry.hpp"

namespace lensworks::surface {

/// Toroidal lattice of lenses cut by two perpendicularly intersecting square
/// circle packings of radius r. Lens (k,l) sits at ((2k+1)r/2, (2l+1)r/2);
/// there are 2bw x 2bh lenses. The A packing lives on the 2r-spaced square
/// lattice, B is shifted by (r,r); intersecting A/B centers are r*sqrt(2)
/// apart, which is exactly perpendicular intersection for equal radii.
///
/// Ownership (indices mod lattice size):
///   A(i,j) at (2ri, 2rj)     owns lenses {2i-1,2i} x {2j-1,2j}
///   B(i,j) at (2ri+r, 2rj+r) owns lenses {2i,2i+1} x {2j,2j+1}
struct LensLattice {
  double r = 1.0;
  int bw = 1;
  int bh = 1;

  int lens_cols() const { return 2 * bw; }
  int lens_rows() const { return 2 * bh; }
  int lens_count() const { return lens_cols() * lens_rows(); }
  Vec2 lens_center(int k, int l) const {
    return {(2 * k + 1) * r / 2.0, (2 * l + 1) * r / 2.0};
  }

  /// Circle ids: A(i,j) = j*bw+i, B(i,j) = bw*bh + j*bw+i.
  std::int64_t a_id(int i, int j) const { return static_cast<std::int64_t>(j) * bw + i; }
  std::int64_t b_id(int i, int j) const {
    return static_cast<std::int64_t>(bw) * bh + static_cast<std::int64_t>(j) * bw + i;
  }

  /// The four owned lens indices in NW, NE, SW, SE order (screen coords,
  /// y downward, matching the Block4 layout).
  std::array<std::pair<int, int>, 4> owned_lenses(std::int64_t circle_id) const;

  std::vector<Circle> circles() const;
};

struct SurfaceState {
  LensLattice lattice;
  std::vector<std::uint8_t> values;  // row-major over (k,l), 0/1

  std::uint8_t value(int k, int l) const {
    return values[static_cast<std::size_t>(l) * lattice.lens_cols() + k];
  }
  void set_value(int k, int l, std::uint8_t v) {
    values[static_cast<std::size_t>(l) * lattice.lens_cols() + k] = v;
  }
  int lens_sum() const;
};

struct ScriptEntry {
  std::int64_t circle_id = 0;
  int quarter_turns = 0;  // mod 4
  Packing packing = Packing::A;
};
using RotationScript = std::vector<ScriptEntry>;

/// All-zero surface over a bw x bh block lattice of radius r.
SurfaceState build_square2_surface(double r, int bw, int bh);

/// Cyclically shifts the circle's four lens values by quarter_turns in the
/// shared CW convention (NW -> NE -> SE -> SW). Other lenses are untouched.
SurfaceState rotate_circle(const SurfaceState& s, std::int64_t circle_id,
                           int quarter_turns);

/// Translates one CA step into a rotation script, one entry per block in
/// canonical row-major anchor order. CW maps to one quarter turn, CCW to
/// three. Even-phase blocks anchor at even (col,row) and are owned by
/// B circles; odd-phase blocks by A circles.
RotationScript ca_step_to_script(ca::Phase phase, ca::RuleKind rule,
                                 std::span<const ca::Rotation> choices,
                                 std::size_t step_index, const LensLattice& lattice);

SurfaceState apply_script(const SurfaceState& s, const RotationScript& script);

struct EquivalenceReport {
  bool equal = true;
  int first_divergence_step = -1;
};

/// Evolves a grid by Margolus steps and, in lockstep, its lens surface by
/// rotation scripts built from the same recorded choices; compares cell
/// (col,row) with lens (col,row) after every step.
EquivalenceReport equivalence_check(const ca::Grid& g0, int steps,
                                    ca::RuleKind rule, std::uint64_t seed);

struct BlockOracleReport {
  bool all_equal = true;
  int failing_cases = 0;  // out of 16 block states x {CW, CCW}
};

/// Exhaustive oracle: for every Block4 state and both rotations, the CA
/// block update and the owning circle's lens permutation must agree.
BlockOracleReport exhaustive_block_equivalence();

/// Triangular circle packing: rows x cols circles of radius r, spacing 2r,
/// odd rows offset by r, row pitch r*sqrt(3); all polarities +pi/2.
std::vector<Circle> build_tri_packing(double r, int rows, int cols);

/// Same centers with radii scaled by f > 1 (DoubledRadius is f = 2);
/// geometry-only output for rendering and inspection.
std::vector<Circle> build_variant_packing(double factor, double r, int rows, int cols);

}  // namespace lensworks::surface

#endif  // LENSWORKS_SURFACE_HPP
