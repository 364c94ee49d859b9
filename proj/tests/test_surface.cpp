#include <cmath>

#include "doctest.h"
#include "lensworks/random.hpp"
#include "lensworks/scene_io.hpp"
#include "lensworks/surface.hpp"

using namespace lensworks;
using namespace lensworks::surface;

TEST_CASE("build_square2_surface counts and validation") {
  auto s = build_square2_surface(1.0, 1, 1);
  CHECK(s.lattice.circles().size() == 2);  // 1 A + 1 B in the toroidal unit
  CHECK(s.lattice.lens_count() == 4);
  CHECK(build_square2_surface(1.0, 4, 4).lattice.lens_count() == 64);
  CHECK_THROWS_AS(build_square2_surface(0.0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_square2_surface(-1.0, 1, 1), std::invalid_argument);
}

TEST_CASE("intersecting A-B pairs are perpendicular") {
  for (double r : {0.5, 1.0, 3.0}) {
    auto s = build_square2_surface(r, 4, 3);
    auto circles = s.lattice.circles();
    for (const Circle& a : circles) {
      if (a.packing != Packing::A) continue;
      for (const Circle& b : circles) {
        if (b.packing != Packing::B) continue;
        double d = a.center.dist(b.center);
        if (d < 2.0 * r) {  // intersecting pair
          CHECK(std::abs(d * d - 2.0 * r * r) <= 1e-12 * r * r);
        }
      }
    }
  }
}

TEST_CASE("rotate_circle permutes the owned lenses") {
  auto s = build_square2_surface(1.0, 2, 2);
  auto owned = s.lattice.owned_lenses(s.lattice.b_id(0, 0));  // NW,NE,SW,SE
  s.set_value(owned[0].first, owned[0].second, 1);

  SUBCASE("zero and full turns are the identity") {
    CHECK(rotate_circle(s, s.lattice.b_id(0, 0), 0).values == s.values);
    CHECK(rotate_circle(s, s.lattice.b_id(0, 0), 4).values == s.values);
    CHECK(rotate_circle(s, s.lattice.b_id(0, 0), -4).values == s.values);
  }
  SUBCASE("one CW quarter moves NW to NE") {
    auto t = rotate_circle(s, s.lattice.b_id(0, 0), 1);
    CHECK(t.value(owned[0].first, owned[0].second) == 0);
    CHECK(t.value(owned[1].first, owned[1].second) == 1);
  }
  SUBCASE("q then 4-q is the identity") {
    for (int q = 0; q < 4; ++q) {
      auto t = rotate_circle(rotate_circle(s, s.lattice.a_id(1, 1), q),
                             s.lattice.a_id(1, 1), 4 - q);
      CHECK(t.values == s.values);
    }
  }
  SUBCASE("unknown id throws") {
    CHECK_THROWS_AS(rotate_circle(s, 999, 1), std::out_of_range);
  }
}

TEST_CASE("scripts conserve the lens sum and disjoint scripts commute") {
  Rng rng(99);
  auto s = build_square2_surface(1.0, 3, 3);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    s.values[i] = rng.next_bit() ? 1 : 0;
  }
  int sum = s.lens_sum();

  // Random script over both packings.
  RotationScript script;
  for (int i = 0; i < 20; ++i) {
    script.push_back({static_cast<std::int64_t>(rng.next_u64() % 18),
                      static_cast<int>(rng.next_u64() % 4), Packing::A});
  }
  auto t = apply_script(s, script);
  CHECK(t.lens_sum() == sum);

  // Scripts touching disjoint circles commute.
  RotationScript sa{{s.lattice.a_id(0, 0), 1, Packing::A}};
  RotationScript sb{{s.lattice.b_id(1, 1), 3, Packing::B}};
  // A(0,0) owns lenses {-1,0}x{-1,0} (wrapped), B(1,1) owns {2,3}x{2,3}.
  CHECK(apply_script(apply_script(s, sa), sb).values ==
        apply_script(apply_script(s, sb), sa).values);
}

TEST_CASE("ca_step_to_script construction") {
  LensLattice lat{1.0, 2, 2};
  SUBCASE("AlwaysCW on even phase targets B circles with one quarter turn") {
    auto script = ca_step_to_script(ca::Phase::Even, ca::RuleKind::AlwaysCW, {}, 0, lat);
    REQUIRE(script.size() == 4);
    for (const auto& e : script) {
      CHECK(e.packing == Packing::B);
      CHECK(e.quarter_turns == 1);
    }
  }
  SUBCASE("AlwaysCCW gives three quarter turns") {
    auto script = ca_step_to_script(ca::Phase::Odd, ca::RuleKind::AlwaysCCW, {}, 0, lat);
    for (const auto& e : script) {
      CHECK(e.packing == Packing::A);
      CHECK(e.quarter_turns == 3);
    }
  }
  SUBCASE("diffusion needs a full choice segment") {
    std::vector<ca::Rotation> short_seg{ca::Rotation::CW};
    CHECK_THROWS_AS(
        ca_step_to_script(ca::Phase::Even, ca::RuleKind::Diffusion, short_seg, 0, lat),
        ReplayError);
  }
}

TEST_CASE("exhaustive 16x2 block oracle") {
  auto report = exhaustive_block_equivalence();
  CHECK(report.all_equal);
  CHECK(report.failing_cases == 0);
}

TEST_CASE("equivalence over trajectories") {
  SUBCASE("empty grid stays equal") {
    ca::Grid g(8, 8);
    CHECK(equivalence_check(g, 10, ca::RuleKind::Diffusion, 1).equal);
  }
  SUBCASE("random diffusion trajectory") {
    ca::Grid g = ca::Grid::random(16, 16, 0.4, 7);
    auto report = equivalence_check(g, 50, ca::RuleKind::Diffusion, 7);
    CHECK(report.equal);
    CHECK(report.first_divergence_step == -1);
  }
  SUBCASE("alternate rule trajectory") {
    ca::Grid g = ca::Grid::random(8, 8, 0.5, 13);
    CHECK(equivalence_check(g, 21, ca::RuleKind::AlternateByStep, 13).equal);
  }
}

TEST_CASE("triangular packing geometry") {
  auto row = build_tri_packing(1.0, 1, 2);
  REQUIRE(row.size() == 2);
  CHECK(row[0].center.dist(row[1].center) == doctest::Approx(2.0).epsilon(1e-12));

  auto grid = build_tri_packing(1.0, 2, 2);
  REQUIRE(grid.size() == 4);
  CHECK(grid[2].center.x == doctest::Approx(1.0));
  CHECK(grid[2].center.y == doctest::Approx(std::sqrt(3.0)));
  CHECK(grid[3].center.x == doctest::Approx(3.0));

  auto big = build_tri_packing(0.7, 5, 6);
  double min_d = 1e30;
  for (std::size_t i = 0; i < big.size(); ++i) {
    for (std::size_t j = i + 1; j < big.size(); ++j) {
      min_d = std::min(min_d, big[i].center.dist(big[j].center));
    }
  }
  CHECK(std::abs(min_d - 1.4) <= 1e-12);
  CHECK_THROWS_AS(build_tri_packing(0.0, 2, 2), std::invalid_argument);
}

TEST_CASE("variant packings") {
  auto doubled = build_variant_packing(2.0, 1.0, 2, 2);
  for (const auto& c : doubled) CHECK(c.radius == doctest::Approx(2.0));

  auto extended = build_variant_packing(1.2, 1.0, 3, 3);
  // neighbors at center distance 2 < 2*1.2 overlap
  CHECK(extended[0].center.dist(extended[1].center) < 2.0 * 1.2);
  CHECK_THROWS_AS(build_variant_packing(1.0, 1.0, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_variant_packing(0.5, 1.0, 2, 2), std::invalid_argument);
}

TEST_CASE("scene and script json round trips") {
  SceneData scene;
  scene.circles = build_tri_packing(1.0, 2, 3);
  scene.lenses.push_back({1, 2, 1});
  SceneData back = scene_from_json(scene_to_json(scene));
  REQUIRE(back.circles.size() == scene.circles.size());
  CHECK(back.circles[3].center.x == scene.circles[3].center.x);
  CHECK(back.circles[3].polarity == scene.circles[3].polarity);
  REQUIRE(back.lenses.size() == 1);
  CHECK(back.lenses[0].value == 1);

  RotationScript script{{3, 1, Packing::A}, {7, 3, Packing::B}};
  auto script_back = script_from_json(script_to_json(script));
  REQUIRE(script_back.size() == 2);
  CHECK(script_back[1].circle_id == 7);
  CHECK(script_back[1].quarter_turns == 3);
  CHECK(script_back[1].packing == Packing::B);
}
