#include "lensworks/scene_io.hpp"

#include <fstream>

#include "json.hpp"
#include "lensworks/errors.hpp"

namespace lensworks {

namespace {

std::string packing_name(Packing p) {
  switch (p) {
    case Packing::A: return "A";
    case Packing::B: return "B";
    case Packing::None: break;
  }
  return "none";
}

Packing packing_from_name(const std::string& name) {
  if (name == "A") return Packing::A;
  if (name == "B") return Packing::B;
  if (name == "none") return Packing::None;
  throw IoError("unknown packing: " + name);
}

}  // namespace

std::string scene_to_json(const SceneData& scene) {
  nlohmann::json j;
  j["circles"] = nlohmann::json::array();
  for (const Circle& c : scene.circles) {
    j["circles"].push_back({{"id", c.id},
                            {"cx", c.center.x},
                            {"cy", c.center.y},
                            {"r", c.radius},
                            {"polarity", c.polarity},
                            {"level", c.level},
                            {"packing", packing_name(c.packing)}});
  }
  j["lenses"] = nlohmann::json::array();
  for (const auto& lens : scene.lenses) {
    j["lenses"].push_back({{"k", lens.k}, {"l", lens.l}, {"value", lens.value}});
  }
  return j.dump(2) + "\n";
}

SceneData scene_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SceneData scene;
  for (const auto& jc : j.at("circles")) {
    Circle c;
    c.id = jc.at("id");
    c.center = {jc.at("cx"), jc.at("cy")};
    c.radius = jc.at("r");
    c.polarity = jc.at("polarity");
    c.level = jc.at("level");
    c.packing = packing_from_name(jc.at("packing"));
    scene.circles.push_back(c);
  }
  if (j.contains("lenses")) {
    for (const auto& jl : j.at("lenses")) {
      scene.lenses.push_back({jl.at("k"), jl.at("l"), jl.at("value")});
    }
  }
  return scene;
}

void save_scene(const SceneData& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << scene_to_json(scene);
  if (!out) throw IoError("write failed: " + path);
}

SceneData load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return scene_from_json(text);
}

std::string script_to_json(const surface::RotationScript& script) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : script) {
    j.push_back({{"circle_id", e.circle_id},
                 {"quarter_turns", e.quarter_turns},
                 {"packing", packing_name(e.packing)}});
  }
  return j.dump(2) + "\n";
}

surface::RotationScript script_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  surface::RotationScript script;
  for (const auto& je : j) {
    script.push_back({je.at("circle_id"), je.at("quarter_turns"),
                      packing_from_name(je.at("packing"))});
  }
  return script;
}

}  // namespace lensworks
