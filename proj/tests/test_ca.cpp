#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "lensworks/ca.hpp"

using namespace lensworks;
using namespace lensworks::ca;

namespace {

Grid single_particle(int w, int h, int col, int row) {
  Grid g(w, h);
  g.set(col, row, 1);
  return g;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("rotate_block basics") {
  CHECK(rotate_block(Block4{0, 0, 0, 0}, Rotation::CW) == Block4{0, 0, 0, 0});
  CHECK(rotate_block(Block4{1, 1, 1, 1}, Rotation::CW) == Block4{1, 1, 1, 1});
  // nw-only moves to ne under CW
  CHECK(rotate_block(Block4{1, 0, 0, 0}, Rotation::CW) == Block4{0, 1, 0, 0});
  CHECK(rotate_block(Block4{0, 1, 0, 0}, Rotation::CW) == Block4{0, 0, 0, 1});
}

TEST_CASE("rotate_block group structure over all 16 states") {
  for (int code = 0; code < 16; ++code) {
    Block4 b = Block4::decode(static_cast<std::uint8_t>(code));
    CHECK(b.encode() == code);
    CHECK(rotate_block(rotate_block(b, Rotation::CW), Rotation::CCW) == b);
    CHECK(rotate_block(rotate_block(b, Rotation::CCW), Rotation::CW) == b);
    Block4 four = b;
    for (int i = 0; i < 4; ++i) four = rotate_block(four, Rotation::CW);
    CHECK(four == b);
  }
}

TEST_CASE("new_grid density extremes and validation") {
  CHECK(Grid::random(4, 4, 0.0, 123).particle_count() == 0);
  CHECK(Grid::random(4, 4, 1.0, 123).particle_count() == 16);
  CHECK_THROWS_AS(Grid(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(Grid(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(Grid::random(4, 4, 1.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(Grid::random(4, 4, -0.1, 0), std::invalid_argument);
}

TEST_CASE("fixed-seed grid regression") {
  // Pinned from the first run of this generator; guards the PRNG mapping.
  Grid g = Grid::random(64, 64, 0.3, 7);
  CHECK(g.particle_count() == 1224);
}

TEST_CASE("margolus_step single particle, AlwaysCW") {
  Grid g = single_particle(4, 4, 0, 0);
  ChoiceStream stream(0);
  Grid next = margolus_step(g, RuleKind::AlwaysCW, stream);
  CHECK(next.phase() == Phase::Odd);
  CHECK(next.particle_count() == 1);
  CHECK(next.at(1, 0) == 1);
}

TEST_CASE("all-zero grid is a fixed point") {
  Grid g(8, 6);
  ChoiceStream stream(3);
  for (RuleKind rule : {RuleKind::Diffusion, RuleKind::AlwaysCW,
                        RuleKind::AlwaysCCW, RuleKind::AlternateByStep}) {
    Grid next = margolus_step(g, rule, stream);
    CHECK(next.particle_count() == 0);
    CHECK(next.phase() == Phase::Odd);
  }
}

TEST_CASE("conservation and phase alternation over random trajectories") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Grid g = Grid::random(16, 12, 0.4, seed);
    int n0 = g.particle_count();
    ChoiceStream stream(seed);
    for (int step = 0; step < 40; ++step) {
      g = margolus_step(g, RuleKind::Diffusion, stream);
      CHECK(g.particle_count() == n0);
      CHECK(g.phase() == ((step + 1) % 2 == 0 ? Phase::Even : Phase::Odd));
    }
  }
}

TEST_CASE("block locality: cells outside the active block are unchanged") {
  Grid g = Grid::random(8, 8, 0.5, 11);
  ChoiceStream stream(11);
  Grid next = margolus_step(g, RuleKind::AlwaysCW, stream);
  // Each even-phase block only permutes within itself: block sums invariant.
  for (int bj = 0; bj < 4; ++bj) {
    for (int bi = 0; bi < 4; ++bi) {
      int before = g.at(2 * bi, 2 * bj) + g.at(2 * bi + 1, 2 * bj) +
                   g.at(2 * bi, 2 * bj + 1) + g.at(2 * bi + 1, 2 * bj + 1);
      int after = next.at(2 * bi, 2 * bj) + next.at(2 * bi + 1, 2 * bj) +
                  next.at(2 * bi, 2 * bj + 1) + next.at(2 * bi + 1, 2 * bj + 1);
      CHECK(before == after);
    }
  }
}

TEST_CASE("unstep inverts step") {
  SUBCASE("deterministic rule, small grid") {
    Grid g = Grid::random(4, 4, 0.5, 5);
    ChoiceStream stream(5);
    Grid fwd = margolus_step(g, RuleKind::AlwaysCW, stream);
    CHECK(margolus_unstep(fwd, RuleKind::AlwaysCW, stream) == g);
  }
  SUBCASE("diffusion with recorded choices") {
    Grid g = Grid::random(64, 64, 0.3, 7);
    ChoiceStream stream(7);
    Grid fwd = margolus_step(g, RuleKind::Diffusion, stream);
    CHECK(margolus_unstep(fwd, RuleKind::Diffusion, stream) == g);
  }
  SUBCASE("empty grid") {
    Grid g(4, 4);
    ChoiceStream stream(0);
    Grid fwd = margolus_step(g, RuleKind::Diffusion, stream);
    Grid back = margolus_unstep(fwd, RuleKind::Diffusion, stream);
    CHECK(back == g);
  }
  SUBCASE("exhausted stream") {
    Grid g(4, 4);
    ChoiceStream stream(0);
    CHECK_THROWS_AS(margolus_unstep(g, RuleKind::Diffusion, stream), ReplayError);
  }
}

TEST_CASE("run and full reverse replay") {
  Grid g0 = Grid::random(32, 32, 0.3, 9);
  SUBCASE("zero steps") {
    auto result = run(g0, 0, RuleKind::Diffusion, 9);
    CHECK(result.grid == g0);
    CHECK(result.stream.total_choices() == 0);
    CHECK(result.particle_counts.size() == 1);
  }
  SUBCASE("round trip") {
    auto result = run(g0, 50, RuleKind::Diffusion, 9);
    for (int n : result.particle_counts) CHECK(n == g0.particle_count());
    Grid g = result.grid;
    ChoiceStream stream = result.stream;
    while (stream.step_count() > 0) g = margolus_unstep(g, RuleKind::Diffusion, stream);
    CHECK(g == g0);
  }
}

TEST_CASE("replay reproduces the recorded trajectory bit-for-bit") {
  Grid g0 = Grid::random(16, 16, 0.35, 21);
  auto result = run(g0, 25, RuleKind::Diffusion, 21);
  Grid g = g0;
  for (std::size_t step = 0; step < result.stream.step_count(); ++step) {
    g = margolus_replay_step(g, RuleKind::Diffusion, result.stream, step);
  }
  CHECK(g == result.grid);
}

TEST_CASE("choice stream file round trip") {
  Grid g0 = Grid::random(8, 8, 0.5, 3);
  auto result = run(g0, 17, RuleKind::Diffusion, 3);
  std::string path = temp_path("lw_test_stream.lwcs");
  result.stream.save(path);
  ChoiceStream loaded = ChoiceStream::load(path, 16);
  CHECK(loaded.seed() == result.stream.seed());
  CHECK(loaded.step_count() == result.stream.step_count());
  CHECK(loaded.choices() == result.stream.choices());

  SUBCASE("truncated payload is a replay error") {
    auto size = std::filesystem::file_size(path);
    std::filesystem::resize_file(path, size - 2);
    CHECK_THROWS_AS(ChoiceStream::load(path, 16), ReplayError);
  }
  std::filesystem::remove(path);
}

TEST_CASE("grid json round trip") {
  Grid g = Grid::random(6, 4, 0.5, 42);
  g.set_phase(Phase::Odd);
  GridFile f{g, Rng::name(), 42};
  GridFile back = grid_from_json(grid_to_json(f));
  CHECK(back.grid == g);
  CHECK(back.seed == 42);
  CHECK(back.generator == Rng::name());
}
