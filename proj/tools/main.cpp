// lensworks: Margolus-style reversible block CA, its circle-packing surface
// realization, the two circle fractals, and SVG figure export.
//
// Exit codes: 0 pass, 2 usage, 3 I/O, 4 replay, 5 resource cap.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lensworks/ca.hpp"
#include "lensworks/fractal.hpp"
#include "lensworks/render.hpp"
#include "lensworks/scene_io.hpp"
#include "lensworks/surface.hpp"

namespace {

using nlohmann::json;
namespace ca = lensworks::ca;
namespace surface = lensworks::surface;
namespace fractal = lensworks::fractal;
namespace render = lensworks::render;
using lensworks::Circle;
using lensworks::Packing;
using lensworks::Rect;
using lensworks::SceneData;
using lensworks::Vec2;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitReplay = 4;
constexpr int kExitResource = 5;

void log_config(const json& resolved) {
  std::cout << "config " << resolved.dump() << "\n";
}

std::string svg_metadata(const json& resolved) {
  return "lensworks generator=" + std::string(lensworks::Rng::name()) +
         " config=" + resolved.dump();
}

SceneData scene_from(const std::vector<Circle>& circles) {
  SceneData s;
  s.circles = circles;
  return s;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  int width = 64, height = 64, steps = 100;
  double density = 0.3;
  std::uint64_t seed = 1;
  std::string rule = "diffusion";
  std::string out_grid, out_initial, out_stream, frames_dir;
};

int cmd_simulate(const SimulateArgs& a) {
  json resolved = {{"command", "simulate"}, {"width", a.width},
                   {"height", a.height},   {"steps", a.steps},
                   {"density", a.density}, {"seed", a.seed},
                   {"rule", a.rule},       {"generator", lensworks::Rng::name()}};
  log_config(resolved);

  ca::Grid initial = ca::Grid::random(a.width, a.height, a.density, a.seed);
  if (!a.out_initial.empty()) ca::save_grid({initial, lensworks::Rng::name(), a.seed}, a.out_initial);

  ca::RuleKind rule = ca::rule_from_name(a.rule);
  auto result = ca::run(initial, a.steps, rule, a.seed);
  for (std::size_t i = 0; i < result.particle_counts.size(); ++i) {
    std::cout << "step " << i << " particles " << result.particle_counts[i] << "\n";
  }

  if (!a.out_grid.empty()) {
    ca::save_grid({result.grid, lensworks::Rng::name(), a.seed}, a.out_grid);
  }
  if (!a.out_stream.empty()) result.stream.save(a.out_stream);

  if (!a.frames_dir.empty()) {
    std::filesystem::create_directories(a.frames_dir);
    ca::Grid g = initial;
    ca::ChoiceStream replay = result.stream;
    for (int step = 0; step <= a.steps; ++step) {
      auto s = surface::build_square2_surface(1.0, g.width() / 2, g.height() / 2);
      for (int row = 0; row < g.height(); ++row) {
        for (int col = 0; col < g.width(); ++col) s.set_value(col, row, g.at(col, row));
      }
      auto scene = render::scene_from_surface(s);
      scene.metadata = svg_metadata(resolved) + " frame=" + std::to_string(step);
      char name[32];
      std::snprintf(name, sizeof(name), "frame_%05d.svg", step);
      render::write_svg(scene, a.frames_dir + "/" + name);
      if (step < a.steps) {
        g = ca::margolus_replay_step(g, rule, replay, static_cast<std::size_t>(step));
      }
    }
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// reverse

struct ReverseArgs {
  std::string grid, stream, expect, out;
  std::string rule = "diffusion";
};

int cmd_reverse(const ReverseArgs& a) {
  json resolved = {{"command", "reverse"}, {"grid", a.grid},
                   {"stream", a.stream},   {"rule", a.rule}};
  log_config(resolved);

  ca::GridFile f = ca::load_grid(a.grid);
  std::size_t blocks = static_cast<std::size_t>(f.grid.width() / 2) * (f.grid.height() / 2);
  ca::ChoiceStream stream = ca::ChoiceStream::load(a.stream, blocks);
  ca::RuleKind rule = ca::rule_from_name(a.rule);

  ca::Grid g = f.grid;
  std::size_t steps = stream.step_count();
  while (stream.step_count() > 0) g = ca::margolus_unstep(g, rule, stream);
  std::cout << "replayed " << steps << " steps backward\n";

  if (!a.out.empty()) ca::save_grid({g, f.generator, f.seed}, a.out);
  if (!a.expect.empty()) {
    ca::GridFile want = ca::load_grid(a.expect);
    if (!(want.grid == g)) {
      std::cout << "mismatch against " << a.expect << "\n";
      return kExitFail;
    }
    std::cout << "match against " << a.expect << "\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string what;  // athena | fractal-t | square2 | tri | variant
  int iterations = 3, levels = 2, rows = 5, cols = 5, bw = 4, bh = 4;
  double radius = 1.0, factor = 2.0;
  double wx0 = -6, wy0 = -6, wx1 = 6, wy1 = 6;
  bool allow_large = false;
  std::string svg, scene;
};

int cmd_generate(const GenerateArgs& a) {
  json resolved = {{"command", "generate"}, {"what", a.what},
                   {"radius", a.radius}};
  std::vector<Circle> circles;
  if (a.what == "athena") {
    resolved["iterations"] = a.iterations;
    log_config(resolved);
    Circle seed{0, {0.0, 0.0}, a.radius, M_PI / 2.0, 0, Packing::None};
    std::int64_t cap = a.allow_large ? std::int64_t{1} << 40 : fractal::kCurveCap;
    auto curve = fractal::athena_curve(seed, a.iterations, cap);
    circles = curve.circles;
    auto m = fractal::measures(circles);
    json report = {{"circle_count", m.circle_count},
                   {"total_area", m.total_area},
                   {"total_length", m.total_length}};
    std::cout << "measures " << report.dump() << "\n";
  } else if (a.what == "fractal-t") {
    resolved["levels"] = a.levels;
    resolved["window"] = {a.wx0, a.wy0, a.wx1, a.wy1};
    log_config(resolved);
    auto levels = fractal::fractal_t(a.levels, Rect{a.wx0, a.wy0, a.wx1, a.wy1}, a.radius);
    for (const auto& lv : levels) {
      circles.insert(circles.end(), lv.circles.begin(), lv.circles.end());
    }
  } else if (a.what == "square2") {
    resolved["bw"] = a.bw;
    resolved["bh"] = a.bh;
    log_config(resolved);
    auto s = surface::build_square2_surface(a.radius, a.bw, a.bh);
    if (!a.scene.empty()) {
      SceneData data = scene_from(s.lattice.circles());
      for (int l = 0; l < s.lattice.lens_rows(); ++l) {
        for (int k = 0; k < s.lattice.lens_cols(); ++k) {
          data.lenses.push_back({k, l, s.value(k, l)});
        }
      }
      lensworks::save_scene(data, a.scene);
    }
    if (!a.svg.empty()) {
      auto scene = render::scene_from_surface(s);
      scene.metadata = svg_metadata(resolved);
      render::write_svg(scene, a.svg);
    }
    std::cout << "lenses " << s.lattice.lens_count() << "\n";
    return kExitPass;
  } else if (a.what == "tri") {
    resolved["rows"] = a.rows;
    resolved["cols"] = a.cols;
    log_config(resolved);
    circles = surface::build_tri_packing(a.radius, a.rows, a.cols);
  } else if (a.what == "variant") {
    resolved["rows"] = a.rows;
    resolved["cols"] = a.cols;
    resolved["factor"] = a.factor;
    log_config(resolved);
    circles = surface::build_variant_packing(a.factor, a.radius, a.rows, a.cols);
  } else {
    std::cerr << "unknown generate target: " << a.what << "\n";
    return kExitUsage;
  }

  if (!a.scene.empty()) lensworks::save_scene(scene_from(circles), a.scene);
  if (!a.svg.empty()) {
    auto scene = render::scene_from_circles(circles);
    scene.metadata = svg_metadata(resolved);
    render::write_svg(scene, a.svg);
  }
  std::cout << "circles " << circles.size() << "\n";
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

json suite_reversibility(bool& pass) {
  ca::Grid g0 = ca::Grid::random(64, 64, 0.3, 7);
  auto result = ca::run(g0, 1000, ca::RuleKind::Diffusion, 7);
  ca::Grid g = result.grid;
  ca::ChoiceStream stream = result.stream;
  while (stream.step_count() > 0) {
    g = ca::margolus_unstep(g, ca::RuleKind::Diffusion, stream);
  }
  pass = g == g0;
  return {{"steps", 1000}, {"bit_identical", pass}};
}

json suite_conservation(bool& pass) {
  ca::Grid g0 = ca::Grid::random(64, 64, 0.3, 7);
  auto result = ca::run(g0, 1000, ca::RuleKind::Diffusion, 7);
  pass = true;
  for (int n : result.particle_counts) {
    if (n != result.particle_counts.front()) pass = false;
  }
  return {{"states", result.particle_counts.size()},
          {"particles", result.particle_counts.front()},
          {"constant", pass}};
}

json suite_equivalence(bool& pass) {
  auto oracle = surface::exhaustive_block_equivalence();
  ca::Grid g0 = ca::Grid::random(64, 64, 0.3, 7);
  auto traj = surface::equivalence_check(g0, 200, ca::RuleKind::Diffusion, 7);
  pass = oracle.all_equal && traj.equal;
  return {{"block_cases_failing", oracle.failing_cases},
          {"trajectory_equal", traj.equal},
          {"first_divergence_step", traj.first_divergence_step}};
}

json suite_area(bool& pass) {
  pass = true;
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    Circle seed{0, {0.0, 0.0}, r, M_PI / 2.0, 0, Packing::None};
    for (int x = 0; x <= 11; ++x) {
      auto m = fractal::measures(fractal::athena_curve(seed, x).circles);
      double want = M_PI * r * r;
      double rel = std::abs(m.total_area - want) / want;
      worst = std::max(worst, rel);
      if (rel > 1e-9) pass = false;
    }
  }
  return {{"worst_relative_error", worst}, {"tolerance", 1e-9}};
}

json suite_length(bool& pass) {
  pass = true;
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    Circle seed{0, {0.0, 0.0}, r, M_PI / 2.0, 0, Packing::None};
    for (int x = 0; x <= 11; ++x) {
      auto m = fractal::measures(fractal::athena_curve(seed, x).circles);
      double want = 2.0 * M_PI * r * std::pow(3.0, x / 2.0);
      double rel = std::abs(m.total_length - want) / want;
      worst = std::max(worst, rel);
      if (rel > 1e-9) pass = false;
    }
  }
  return {{"worst_relative_error", worst}, {"tolerance", 1e-9}};
}

json suite_overlap(bool& pass) {
  Circle seed{0, {0.0, 0.0}, 1.0, M_PI / 2.0, 0, Packing::None};

  // x=6: independent exhaustive pairwise oracle.
  auto small = fractal::athena_curve(seed, 6).circles;
  std::size_t exhaustive_pairs = 0;
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (std::size_t j = i + 1; j < small.size(); ++j) {
      double d = small[i].center.dist(small[j].center);
      if (d < small[i].radius + small[j].radius - 1e-9) ++exhaustive_pairs;
    }
  }

  auto large = fractal::athena_curve(seed, 11).circles;
  auto report = fractal::overlap_report(large, 1e-9);

  pass = exhaustive_pairs == 0 && report.overlapping.empty();
  return {{"x6_exhaustive_pairs", exhaustive_pairs},
          {"x11_indexed_pairs", report.overlapping.size()},
          {"x11_min_gap", report.min_gap},
          {"tolerance", 1e-9}};
}

json suite_tiling(bool& pass) {
  auto r1 = fractal::tiling_check(1, 7, 7, 1e-9);
  auto r2 = fractal::tiling_check(2, 7, 7, 1e-9);
  pass = r1.equal && r2.equal;
  return {{"x1_equal", r1.equal}, {"x1_matched", r1.matched},
          {"x2_equal", r2.equal}, {"x2_matched", r2.matched},
          {"tolerance", 1e-9}};
}

json suite_omega_t(bool& pass) {
  auto report = fractal::omega_equals_t(4, Rect{0, 0, 10, 10}, 1e-6);
  pass = report.equal;
  return {{"levels", 4},
          {"equal", report.equal},
          {"first_mismatch_level", report.first_mismatch_level},
          {"tolerance", 1e-6}};
}

json suite_symmetry(bool& pass) {
  Rect window{0, 0, 12, 10};
  auto shallow = fractal::fractal_t(1, window);
  auto probe1 = fractal::radial_symmetry_probe(shallow, 1, window);
  auto deep = fractal::fractal_t(3, window);
  auto probe3 = fractal::radial_symmetry_probe(deep, 3, window);
  pass = probe1.asymmetric == 0 && probe3.asymmetric >= 1;
  return {{"depth1_asymmetric", probe1.asymmetric},
          {"depth1_targets", probe1.targets},
          {"depth3_asymmetric", probe3.asymmetric},
          {"depth3_targets", probe3.targets}};
}

int cmd_verify(const std::string& suite, const std::string& out_path) {
  json resolved = {{"command", "verify"}, {"suite", suite}, {"seed", 7}};
  log_config(resolved);

  bool pass = false;
  json details;
  if (suite == "reversibility") details = suite_reversibility(pass);
  else if (suite == "conservation") details = suite_conservation(pass);
  else if (suite == "equivalence") details = suite_equivalence(pass);
  else if (suite == "area") details = suite_area(pass);
  else if (suite == "length") details = suite_length(pass);
  else if (suite == "overlap") details = suite_overlap(pass);
  else if (suite == "tiling") details = suite_tiling(pass);
  else if (suite == "omega-t") details = suite_omega_t(pass);
  else if (suite == "symmetry") details = suite_symmetry(pass);
  else {
    std::cerr << "unknown suite: " << suite << "\n";
    return kExitUsage;
  }

  json report = {{"check", suite}, {"pass", pass}, {"details", details}, {"seed", 7}};
  std::cout << report.dump(2) << "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw lensworks::IoError("cannot open for writing: " + out_path);
    f << report.dump(2) << "\n";
  }
  return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// estimate (Monte-Carlo exploration of the open union-area question)

int cmd_estimate(int x_max, std::int64_t samples, std::uint64_t seed) {
  json resolved = {{"command", "estimate"}, {"x_max", x_max},
                   {"samples", samples},    {"seed", seed}};
  log_config(resolved);
  auto est = fractal::union_area_estimate(x_max, samples, seed);
  json report = {{"covered_fraction", est.mean},
                 {"stderr", est.stderr_},
                 {"samples", est.samples},
                 {"seed", seed}};
  std::cout << report.dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lensworks: reversible block CA on circle-packing surfaces"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run the block CA forward");
  simulate->add_option("--width", sim.width);
  simulate->add_option("--height", sim.height);
  simulate->add_option("--steps", sim.steps);
  simulate->add_option("--density", sim.density);
  simulate->add_option("--seed", sim.seed);
  simulate->add_option("--rule", sim.rule);
  simulate->add_option("--out-grid", sim.out_grid);
  simulate->add_option("--out-initial", sim.out_initial);
  simulate->add_option("--out-stream", sim.out_stream);
  simulate->add_option("--frames-dir", sim.frames_dir);

  ReverseArgs rev;
  auto* reverse = app.add_subcommand("reverse", "replay a recorded run backward");
  reverse->add_option("--grid", rev.grid)->required();
  reverse->add_option("--stream", rev.stream)->required();
  reverse->add_option("--rule", rev.rule);
  reverse->add_option("--expect", rev.expect);
  reverse->add_option("--out", rev.out);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "build packings and fractals");
  generate->add_option("what", gen.what, "athena | fractal-t | square2 | tri | variant")
      ->required();
  generate->add_option("--iterations", gen.iterations);
  generate->add_option("--levels", gen.levels);
  generate->add_option("--radius", gen.radius);
  generate->add_option("--rows", gen.rows);
  generate->add_option("--cols", gen.cols);
  generate->add_option("--bw", gen.bw);
  generate->add_option("--bh", gen.bh);
  generate->add_option("--factor", gen.factor);
  generate->add_option("--wx0", gen.wx0);
  generate->add_option("--wy0", gen.wy0);
  generate->add_option("--wx1", gen.wx1);
  generate->add_option("--wy1", gen.wy1);
  generate->add_flag("--allow-large", gen.allow_large);
  generate->add_option("--svg", gen.svg);
  generate->add_option("--scene", gen.scene);

  std::string suite, verify_out;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite,
                     "reversibility | conservation | equivalence | area | length | "
                     "overlap | tiling | omega-t | symmetry")
      ->required();
  verify->add_option("--out", verify_out);

  int est_x = 0;
  std::int64_t est_samples = 1000000;
  std::uint64_t est_seed = 7;
  auto* estimate = app.add_subcommand("estimate", "Monte-Carlo curve coverage");
  estimate->add_option("--x-max", est_x);
  estimate->add_option("--samples", est_samples);
  estimate->add_option("--seed", est_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (reverse->parsed()) return cmd_reverse(rev);
    if (generate->parsed()) return cmd_generate(gen);
    if (verify->parsed()) return cmd_verify(suite, verify_out);
    if (estimate->parsed()) return cmd_estimate(est_x, est_samples, est_seed);
  } catch (const lensworks::ReplayError& e) {
    std::cerr << "replay error: " << e.what() << "\n";
    return kExitReplay;
  } catch (const lensworks::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const lensworks::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
