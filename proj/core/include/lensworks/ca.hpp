#ifndef LENSWORKS_CA_HPP
#define LENSWORKS_CA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lensworks/errors.hpp"
#include "lensworks/random.hpp"

namespace lensworks::ca {

/// Which of the two diagonal block partitions is active. Even anchors 2x2
/// blocks at even (col,row); Odd anchors at odd (col,row) with toroidal wrap.
enum class Phase : std::uint8_t { Even = 0, Odd = 1 };

inline Phase flip(Phase p) { return p == Phase::Even ? Phase::Odd : Phase::Even; }

enum class Rotation : std::uint8_t { CW = 0, CCW = 1 };

/// Block update rules. Diffusion draws one uniform CW/CCW choice per block
/// per step; the deterministic kinds exist for reproducible tests and
/// consume no choices.
enum class RuleKind : std::uint8_t { Diffusion, AlwaysCW, AlwaysCCW, AlternateByStep };

std::string rule_name(RuleKind rule);
RuleKind rule_from_name(const std::string& name);

/// One 2x2 block of binary cells.
///
/// Rotation convention (shared by every module): CW means the nw value
/// arrives at ne, in screen coordinates with y downward.
struct Block4 {
  std::uint8_t nw = 0, ne = 0, sw = 0, se = 0;

  /// Bijective encoding to 0..15: nw=bit3, ne=bit2, sw=bit1, se=bit0.
  std::uint8_t encode() const {
    return static_cast<std::uint8_t>(nw << 3 | ne << 2 | sw << 1 | se);
  }
  static Block4 decode(std::uint8_t code) {
    return {static_cast<std::uint8_t>((code >> 3) & 1),
            static_cast<std::uint8_t>((code >> 2) & 1),
            static_cast<std::uint8_t>((code >> 1) & 1),
            static_cast<std::uint8_t>(code & 1)};
  }
  bool operator==(const Block4&) const = default;
};

Block4 rotate_block(Block4 b, Rotation dir);

/// Rectangular toroidal grid of binary cells with a partition phase.
/// Width and height are even so every cell has a block in both phases.
class Grid {
 public:
  Grid(int width, int height, Phase phase = Phase::Even);

  /// Each cell independently 1 with probability `density` (seeded stream).
  static Grid random(int width, int height, double density, std::uint64_t seed);

  int width() const { return width_; }
  int height() const { return height_; }
  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }

  std::uint8_t at(int col, int row) const { return cells_[index(col, row)]; }
  void set(int col, int row, std::uint8_t v) { cells_[index(col, row)] = v; }

  /// Toroidal access: any integer coordinates.
  std::uint8_t at_wrapped(int col, int row) const;
  void set_wrapped(int col, int row, std::uint8_t v);

  const std::vector<std::uint8_t>& cells() const { return cells_; }
  std::vector<std::uint8_t>& cells() { return cells_; }

  int particle_count() const;

  bool operator==(const Grid&) const = default;

 private:
  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * width_ + col;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> cells_;  // row-major, 0/1
  Phase phase_;
};

/// Recorded per-block rotation choices, one segment per step, making a
/// stochastic trajectory exactly replayable forward and backward.
class ChoiceStream {
 public:
  explicit ChoiceStream(std::uint64_t seed) : rng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::size_t step_count() const { return offsets_.size(); }
  std::size_t total_choices() const { return choices_.size(); }

  /// Draws a fresh uniform choice and records it in the open step.
  Rotation draw();

  void begin_step() { offsets_.push_back(choices_.size()); }

  /// Recorded choices of step `step` (0-based).
  std::span<const Rotation> step_segment(std::size_t step) const;

  /// Removes the most recent step's segment. Throws ReplayError when empty.
  void pop_step();

  const std::vector<Rotation>& choices() const { return choices_; }

  /// Binary file: magic "LWCS", version u32, seed u64, step count u64, then
  /// packed 1-bit choices (0=CW, 1=CCW) in canonical block order, LSB first.
  void save(const std::string& path) const;
  /// `blocks_per_step` recovers the per-step boundaries (the format stores
  /// only the flat bit sequence); pass 0 for a stream with empty segments.
  static ChoiceStream load(const std::string& path, std::size_t blocks_per_step);

 private:
  Rng rng_;
  std::uint64_t seed_;
  std::vector<Rotation> choices_;
  std::vector<std::size_t> offsets_;  // start of each step's segment
};

/// Applies one Margolus step: every 2x2 block of the active partition is
/// rotated per `rule`; Diffusion draws fresh choices into `stream`.
/// Every step (any rule) appends one segment so step indices track time.
/// Returned grid has the flipped phase; particle count is unchanged.
Grid margolus_step(const Grid& g, RuleKind rule, ChoiceStream& stream);

/// Forward step consuming the recorded choices of step `step` instead of
/// drawing fresh ones. Throws ReplayError on segment length mismatch.
Grid margolus_replay_step(const Grid& g, RuleKind rule, const ChoiceStream& stream,
                          std::size_t step);

/// Exact inverse of the most recent recorded step; consumes (pops) that
/// step's segment. Throws ReplayError when the stream is exhausted.
Grid margolus_unstep(const Grid& g, RuleKind rule, ChoiceStream& stream);

struct RunResult {
  Grid grid;
  ChoiceStream stream;
  std::vector<int> particle_counts;  // steps + 1 entries
  Phase final_phase;
};

RunResult run(const Grid& g, int steps, RuleKind rule, std::uint64_t seed);

inline int particle_count(const Grid& g) { return g.particle_count(); }

/// Grid state persisted as JSON together with its provenance.
struct GridFile {
  Grid grid;
  std::string generator = Rng::name();
  std::uint64_t seed = 0;
};

std::string grid_to_json(const GridFile& f);
GridFile grid_from_json(const std::string& text);
void save_grid(const GridFile& f, const std::string& path);
GridFile load_grid(const std::string& path);

}  // namespace lensworks::ca

#endif  // LENSWORKS_CA_HPP
