#ifndef LENSWORKS_SCENE_IO_HPP
#define LENSWORKS_SCENE_IO_HPP

#include <string>
#include <vector>

#include "lensworks/geometry.hpp"
#include "lensworks/surface.hpp"

namespace lensworks {

/// Scene file: {circles: [{id, cx, cy, r, polarity, level, packing}],
///              lenses:  [{k, l, value}]}; lenses may be empty.
struct SceneData {
  std::vector<Circle> circles;
  struct Lens {
    int k = 0, l = 0;
    std::uint8_t value = 0;
  };
  std::vector<Lens> lenses;
};

std::string scene_to_json(const SceneData& scene);
SceneData scene_from_json(const std::string& text);
void save_scene(const SceneData& scene, const std::string& path);
SceneData load_scene(const std::string& path);

/// Rotation script file: JSON array of {circle_id, quarter_turns, packing}.
std::string script_to_json(const surface::RotationScript& script);
surface::RotationScript script_from_json(const std::string& text);

}  // namespace lensworks

#endif  // LENSWORKS_SCENE_IO_HPP
