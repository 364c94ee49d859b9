#include "lensworks/surface.hpp"

#include <cmath>
#include <stdexcept>

namespace lensworks::surface {

namespace {

int wrap(int v, int n) {
  v %= n;
  return v < 0 ? v + n : v;
}

}  // namespace

std::array<std::pair<int, int>, 4> LensLattice::owned_lenses(std::int64_t circle_id) const {
  std::int64_t n = static_cast<std::int64_t>(bw) * bh;
  if (circle_id < 0 || circle_id >= 2 * n) {
    throw std::out_of_range("unknown circle id");
  }
  bool is_b = circle_id >= n;
  int idx = static_cast<int>(is_b ? circle_id - n : circle_id);
  int i = idx % bw, j = idx / bw;
  int k0 = is_b ? 2 * i : 2 * i - 1;
  int l0 = is_b ? 2 * j : 2 * j - 1;
  int cols = lens_cols(), rows = lens_rows();
  return {{{wrap(k0, cols), wrap(l0, rows)},
           {wrap(k0 + 1, cols), wrap(l0, rows)},
           {wrap(k0, cols), wrap(l0 + 1, rows)},
           {wrap(k0 + 1, cols), wrap(l0 + 1, rows)}}};
}

std::vector<Circle> LensLattice::circles() const {
  std::vector<Circle> out;
  out.reserve(2 * static_cast<std::size_t>(bw) * bh);
  for (int j = 0; j < bh; ++j) {
    for (int i = 0; i < bw; ++i) {
      out.push_back({a_id(i, j), {2 * r * i, 2 * r * j}, r, 0.0, 0, Packing::A});
    }
  }
  for (int j = 0; j < bh; ++j) {
    for (int i = 0; i < bw; ++i) {
      out.push_back({b_id(i, j), {2 * r * i + r, 2 * r * j + r}, r, 0.0, 0, Packing::B});
    }
  }
  return out;
}

int SurfaceState::lens_sum() const {
  int n = 0;
  for (auto v : values) n += v;
  return n;
}

SurfaceState build_square2_surface(double r, int bw, int bh) {
  if (r <= 0) throw std::invalid_argument("radius must be positive");
  if (bw < 1 || bh < 1) throw std::invalid_argument("extent must be >= 1");
  SurfaceState s;
  s.lattice = {r, bw, bh};
  s.values.assign(static_cast<std::size_t>(s.lattice.lens_count()), 0);
  return s;
}

SurfaceState rotate_circle(const SurfaceState& s, std::int64_t circle_id,
                           int quarter_turns) {
  auto owned = s.lattice.owned_lenses(circle_id);  // NW, NE, SW, SE
  int q = wrap(quarter_turns, 4);
  SurfaceState out = s;
  // CW cycle of positions: NW(0) -> NE(1) -> SE(3) -> SW(2) -> NW.
  static constexpr int cycle[4] = {0, 1, 3, 2};
  for (int pos = 0; pos < 4; ++pos) {
    auto [sk, sl] = owned[cycle[pos]];
    auto [dk, dl] = owned[cycle[(pos + q) % 4]];
    out.set_value(dk, dl, s.value(sk, sl));
  }
  return out;
}

RotationScript ca_step_to_script(ca::Phase phase, ca::RuleKind rule,
                                 std::span<const ca::Rotation> choices,
                                 std::size_t step_index, const LensLattice& lattice) {
  std::size_t blocks = static_cast<std::size_t>(lattice.bw) * lattice.bh;
  if (rule == ca::RuleKind::Diffusion && choices.size() != blocks) {
    throw ReplayError("choice segment length mismatch");
  }
  RotationScript script;
  script.reserve(blocks);
  std::size_t block = 0;
  for (int bj = 0; bj < lattice.bh; ++bj) {
    for (int bi = 0; bi < lattice.bw; ++bi, ++block) {
      ca::Rotation rot;
      switch (rule) {
        case ca::RuleKind::Diffusion: rot = choices[block]; break;
        case ca::RuleKind::AlwaysCW: rot = ca::Rotation::CW; break;
        case ca::RuleKind::AlwaysCCW: rot = ca::Rotation::CCW; break;
        case ca::RuleKind::AlternateByStep:
          rot = step_index % 2 == 0 ? ca::Rotation::CW : ca::Rotation::CCW;
          break;
        default: throw std::invalid_argument("unknown rule kind");
      }
      int q = rot == ca::Rotation::CW ? 1 : 3;
      if (phase == ca::Phase::Even) {
        // Block anchored at (2bi, 2bj) covers lenses {2bi,2bi+1}x{2bj,2bj+1},
        // owned by B(bi,bj).
        script.push_back({lattice.b_id(bi, bj), q, Packing::B});
      } else {
        // Block anchored at (2bi+1, 2bj+1) is owned by A(bi+1, bj+1).
        int ai = (bi + 1) % lattice.bw, aj = (bj + 1) % lattice.bh;
        script.push_back({lattice.a_id(ai, aj), q, Packing::A});
      }
    }
  }
  return script;
}

SurfaceState apply_script(const SurfaceState& s, const RotationScript& script) {
  SurfaceState out = s;
  for (const auto& e : script) out = rotate_circle(out, e.circle_id, e.quarter_turns);
  return out;
}

EquivalenceReport equivalence_check(const ca::Grid& g0, int steps,
                                    ca::RuleKind rule, std::uint64_t seed) {
  SurfaceState s = build_square2_surface(1.0, g0.width() / 2, g0.height() / 2);
  for (int row = 0; row < g0.height(); ++row) {
    for (int col = 0; col < g0.width(); ++col) {
      s.set_value(col, row, g0.at(col, row));
    }
  }

  ca::Grid g = g0;
  ca::ChoiceStream stream(seed);
  for (int step = 0; step < steps; ++step) {
    ca::Phase phase = g.phase();
    g = ca::margolus_step(g, rule, stream);
    auto script = ca_step_to_script(phase, rule, stream.step_segment(step),
                                    static_cast<std::size_t>(step), s.lattice);
    s = apply_script(s, script);
    for (int row = 0; row < g.height(); ++row) {
      for (int col = 0; col < g.width(); ++col) {
        if (s.value(col, row) != g.at(col, row)) return {false, step};
      }
    }
  }
  return {true, -1};
}

BlockOracleReport exhaustive_block_equivalence() {
  BlockOracleReport report;
  for (int code = 0; code < 16; ++code) {
    for (ca::Rotation rot : {ca::Rotation::CW, ca::Rotation::CCW}) {
      ca::Block4 b = ca::Block4::decode(static_cast<std::uint8_t>(code));
      ca::Grid g(2, 2, ca::Phase::Even);
      g.set(0, 0, b.nw);
      g.set(1, 0, b.ne);
      g.set(0, 1, b.sw);
      g.set(1, 1, b.se);

      ca::RuleKind rule =
          rot == ca::Rotation::CW ? ca::RuleKind::AlwaysCW : ca::RuleKind::AlwaysCCW;
      auto check = equivalence_check(g, 1, rule, 0);
      if (!check.equal) {
        report.all_equal = false;
        ++report.failing_cases;
      }
    }
  }
  return report;
}

std::vector<Circle> build_tri_packing(double r, int rows, int cols) {
  if (r <= 0) throw std::invalid_argument("radius must be positive");
  if (rows < 1 || cols < 1) throw std::invalid_argument("extent must be >= 1");
  std::vector<Circle> out;
  out.reserve(static_cast<std::size_t>(rows) * cols);
  double pitch = r * std::sqrt(3.0);
  std::int64_t id = 0;
  for (int j = 0; j < rows; ++j) {
    double x0 = (j % 2 == 1) ? r : 0.0;
    for (int i = 0; i < cols; ++i, ++id) {
      out.push_back({id, {x0 + 2.0 * r * i, pitch * j}, r, M_PI / 2.0, 0, Packing::None});
    }
  }
  return out;
}

std::vector<Circle> build_variant_packing(double factor, double r, int rows, int cols) {
  if (factor <= 1.0) throw std::invalid_argument("radius factor must be > 1");
  auto out = build_tri_packing(r, rows, cols);
  for (auto& c : out) c.radius = r * factor;
  return out;
}

}  // namespace lensworks::surface
