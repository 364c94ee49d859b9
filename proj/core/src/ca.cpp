#include "lensworks/ca.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace lensworks::ca {

std::string rule_name(RuleKind rule) {
  switch (rule) {
    case RuleKind::Diffusion: return "diffusion";
    case RuleKind::AlwaysCW: return "always-cw";
    case RuleKind::AlwaysCCW: return "always-ccw";
    case RuleKind::AlternateByStep: return "alternate";
  }
  throw std::invalid_argument("unknown rule kind");
}

RuleKind rule_from_name(const std::string& name) {
  if (name == "diffusion") return RuleKind::Diffusion;
  if (name == "always-cw") return RuleKind::AlwaysCW;
  if (name == "always-ccw") return RuleKind::AlwaysCCW;
  if (name == "alternate") return RuleKind::AlternateByStep;
  throw std::invalid_argument("unknown rule: " + name);
}

Block4 rotate_block(Block4 b, Rotation dir) {
  if (dir == Rotation::CW) {
    return {b.sw, b.nw, b.se, b.ne};  // nw->ne, ne->se, se->sw, sw->nw
  }
  return {b.ne, b.se, b.nw, b.sw};
}

Grid::Grid(int width, int height, Phase phase)
    : width_(width), height_(height), phase_(phase) {
  if (width < 2 || height < 2 || width % 2 != 0 || height % 2 != 0) {
    throw std::invalid_argument("grid dimensions must be even and >= 2");
  }
  cells_.assign(static_cast<std::size_t>(width) * height, 0);
}

Grid Grid::random(int width, int height, double density, std::uint64_t seed) {
  if (density < 0.0 || density > 1.0) {
    throw std::invalid_argument("density must be in [0,1]");
  }
  Grid g(width, height);
  Rng rng(seed);
  for (auto& c : g.cells_) c = rng.next_double() < density ? 1 : 0;
  return g;
}

std::uint8_t Grid::at_wrapped(int col, int row) const {
  col %= width_;
  if (col < 0) col += width_;
  row %= height_;
  if (row < 0) row += height_;
  return cells_[index(col, row)];
}

void Grid::set_wrapped(int col, int row, std::uint8_t v) {
  col %= width_;
  if (col < 0) col += width_;
  row %= height_;
  if (row < 0) row += height_;
  cells_[index(col, row)] = v;
}

int Grid::particle_count() const {
  int n = 0;
  for (auto c : cells_) n += c;
  return n;
}

Rotation ChoiceStream::draw() {
  if (offsets_.empty()) throw ReplayError("draw outside of a step");
  Rotation r = rng_.next_bit() ? Rotation::CCW : Rotation::CW;
  choices_.push_back(r);
  return r;
}

std::span<const Rotation> ChoiceStream::step_segment(std::size_t step) const {
  if (step >= offsets_.size()) throw ReplayError("choice stream exhausted");
  std::size_t begin = offsets_[step];
  std::size_t end = step + 1 < offsets_.size() ? offsets_[step + 1] : choices_.size();
  return {choices_.data() + begin, end - begin};
}

void ChoiceStream::pop_step() {
  if (offsets_.empty()) throw ReplayError("choice stream exhausted");
  choices_.resize(offsets_.back());
  offsets_.pop_back();
}

namespace {

constexpr char kStreamMagic[4] = {'L', 'W', 'C', 'S'};
constexpr std::uint32_t kStreamVersion = 1;

template <typename T>
void write_le(std::ofstream& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.put(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

template <typename T>
T read_le(std::ifstream& in) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    int c = in.get();
    if (c == EOF) throw ReplayError("truncated choice stream file");
    value |= static_cast<T>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return value;
}

}  // namespace

void ChoiceStream::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(kStreamMagic, 4);
  write_le<std::uint32_t>(out, kStreamVersion);
  write_le<std::uint64_t>(out, seed_);
  write_le<std::uint64_t>(out, static_cast<std::uint64_t>(offsets_.size()));
  std::uint8_t byte = 0;
  int nbits = 0;
  for (Rotation r : choices_) {
    if (r == Rotation::CCW) byte |= static_cast<std::uint8_t>(1u << nbits);
    if (++nbits == 8) {
      out.put(static_cast<char>(byte));
      byte = 0;
      nbits = 0;
    }
  }
  if (nbits > 0) out.put(static_cast<char>(byte));
  if (!out) throw IoError("write failed: " + path);
}

ChoiceStream ChoiceStream::load(const std::string& path, std::size_t blocks_per_step) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kStreamMagic, 4)) {
    throw IoError("bad choice stream magic: " + path);
  }
  std::uint32_t version = read_le<std::uint32_t>(in);
  if (version != kStreamVersion) throw IoError("unsupported stream version");
  std::uint64_t seed = read_le<std::uint64_t>(in);
  std::uint64_t steps = read_le<std::uint64_t>(in);

  std::vector<std::uint8_t> payload;
  for (int c; (c = in.get()) != EOF;) payload.push_back(static_cast<std::uint8_t>(c));

  std::size_t total = steps * blocks_per_step;
  if (payload.empty()) total = 0;  // deterministic-rule stream: empty segments
  if ((total + 7) / 8 != payload.size()) {
    throw ReplayError("choice stream payload size mismatch: " + path);
  }

  ChoiceStream s(seed);
  std::size_t per_step = total == 0 ? 0 : blocks_per_step;
  for (std::uint64_t i = 0; i < steps; ++i) {
    s.begin_step();
    for (std::size_t j = 0; j < per_step; ++j) {
      std::size_t bit = i * per_step + j;
      bool ccw = (payload[bit / 8] >> (bit % 8)) & 1;
      s.choices_.push_back(ccw ? Rotation::CCW : Rotation::CW);
    }
  }
  return s;
}

namespace {

Rotation rule_choice(RuleKind rule, std::size_t step_index) {
  switch (rule) {
    case RuleKind::AlwaysCW: return Rotation::CW;
    case RuleKind::AlwaysCCW: return Rotation::CCW;
    case RuleKind::AlternateByStep:
      return step_index % 2 == 0 ? Rotation::CW : Rotation::CCW;
    case RuleKind::Diffusion: break;
  }
  throw std::invalid_argument("rule_choice called for Diffusion");
}

/// Applies one partition sweep; `choice_at(block_index)` supplies the
/// rotation for each block in canonical row-major anchor order.
template <typename ChoiceFn>
Grid sweep(const Grid& g, ChoiceFn&& choice_at) {
  Grid out = g;
  int off = g.phase() == Phase::Odd ? 1 : 0;
  int bw = g.width() / 2, bh = g.height() / 2;
  std::size_t block = 0;
  for (int bj = 0; bj < bh; ++bj) {
    for (int bi = 0; bi < bw; ++bi, ++block) {
      int ac = 2 * bi + off, ar = 2 * bj + off;
      Block4 b{g.at_wrapped(ac, ar), g.at_wrapped(ac + 1, ar),
               g.at_wrapped(ac, ar + 1), g.at_wrapped(ac + 1, ar + 1)};
      Block4 r = rotate_block(b, choice_at(block));
      out.set_wrapped(ac, ar, r.nw);
      out.set_wrapped(ac + 1, ar, r.ne);
      out.set_wrapped(ac, ar + 1, r.sw);
      out.set_wrapped(ac + 1, ar + 1, r.se);
    }
  }
  out.set_phase(flip(g.phase()));
  return out;
}

}  // namespace

Grid margolus_step(const Grid& g, RuleKind rule, ChoiceStream& stream) {
  std::size_t step_index = stream.step_count();
  stream.begin_step();
  if (rule == RuleKind::Diffusion) {
    return sweep(g, [&](std::size_t) { return stream.draw(); });
  }
  Rotation r = rule_choice(rule, step_index);
  return sweep(g, [&](std::size_t) { return r; });
}

Grid margolus_replay_step(const Grid& g, RuleKind rule, const ChoiceStream& stream,
                          std::size_t step) {
  if (rule == RuleKind::Diffusion) {
    auto seg = stream.step_segment(step);
    std::size_t blocks = static_cast<std::size_t>(g.width() / 2) * (g.height() / 2);
    if (seg.size() != blocks) throw ReplayError("choice segment length mismatch");
    return sweep(g, [&](std::size_t i) { return seg[i]; });
  }
  Rotation r = rule_choice(rule, step);
  return sweep(g, [&](std::size_t) { return r; });
}

Grid margolus_unstep(const Grid& g, RuleKind rule, ChoiceStream& stream) {
  if (stream.step_count() == 0) throw ReplayError("choice stream exhausted");
  std::size_t step = stream.step_count() - 1;

  // Invert: same anchoring the forward step used (the pre-step phase, i.e.
  // the flip of g's phase), with CW and CCW swapped.
  Grid pre(g.width(), g.height(), flip(g.phase()));
  pre.cells() = g.cells();

  Grid out = [&] {
    if (rule == RuleKind::Diffusion) {
      auto seg = stream.step_segment(step);
      std::size_t blocks = static_cast<std::size_t>(g.width() / 2) * (g.height() / 2);
      if (seg.size() != blocks) throw ReplayError("choice segment length mismatch");
      return sweep(pre, [&](std::size_t i) {
        return seg[i] == Rotation::CW ? Rotation::CCW : Rotation::CW;
      });
    }
    Rotation r = rule_choice(rule, step);
    Rotation inv = r == Rotation::CW ? Rotation::CCW : Rotation::CW;
    return sweep(pre, [&](std::size_t) { return inv; });
  }();

  out.set_phase(flip(g.phase()));
  stream.pop_step();
  return out;
}

RunResult run(const Grid& g, int steps, RuleKind rule, std::uint64_t seed) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  RunResult result{g, ChoiceStream(seed), {}, g.phase()};
  result.particle_counts.push_back(g.particle_count());
  for (int i = 0; i < steps; ++i) {
    result.grid = margolus_step(result.grid, rule, result.stream);
    result.particle_counts.push_back(result.grid.particle_count());
  }
  result.final_phase = result.grid.phase();
  return result;
}

std::string grid_to_json(const GridFile& f) {
  nlohmann::json j;
  j["width"] = f.grid.width();
  j["height"] = f.grid.height();
  j["phase"] = f.grid.phase() == Phase::Even ? "even" : "odd";
  j["cells"] = f.grid.cells();
  j["generator"] = f.generator;
  j["seed"] = f.seed;
  return j.dump(2) + "\n";
}

GridFile grid_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string phase = j.at("phase");
  Grid g(j.at("width"), j.at("height"), phase == "odd" ? Phase::Odd : Phase::Even);
  std::vector<std::uint8_t> cells = j.at("cells");
  if (cells.size() != g.cells().size()) throw IoError("grid cell count mismatch");
  for (auto c : cells) {
    if (c > 1) throw IoError("grid cells must be 0 or 1");
  }
  g.cells() = std::move(cells);
  GridFile f{std::move(g)};
  f.generator = j.at("generator");
  f.seed = j.at("seed");
  return f;
}

void save_grid(const GridFile& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << grid_to_json(f);
  if (!out) throw IoError("write failed: " + path);
}

GridFile load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return grid_from_json(text);
}

}  // namespace lensworks::ca
