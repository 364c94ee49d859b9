#ifndef LENSWORKS_SPATIAL_HASH_HPP
#define LENSWORKS_SPATIAL_HASH_HPP

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lensworks/geometry.hpp"

namespace lensworks {

/// Uniform-grid point index for broad-phase neighbor queries.
/// Cell keys are hashed (ix,iy) pairs, so only occupied cells are stored.
class SpatialHash {
 public:
  explicit SpatialHash(double cell_size) : cell_(cell_size) {}

  void insert(const Vec2& p, std::size_t item) {
    map_[key(p)].push_back(item);
  }

  /// Items in the 3x3 cell neighborhood around `p`; complete for any query
  /// radius <= cell size.
  template <typename Fn>
  void for_neighbors(const Vec2& p, Fn&& fn) const {
    std::int64_t cx = coord(p.x), cy = coord(p.y);
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        auto it = map_.find(pack(cx + dx, cy + dy));
        if (it == map_.end()) continue;
        for (std::size_t item : it->second) fn(item);
      }
    }
  }

  double cell_size() const { return cell_; }

 private:
  std::int64_t coord(double v) const {
    return static_cast<std::int64_t>(std::floor(v / cell_));
  }
  static std::uint64_t pack(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x) << 32) ^
           (static_cast<std::uint64_t>(y) & 0xffffffffull);
  }
  std::uint64_t key(const Vec2& p) const { return pack(coord(p.x), coord(p.y)); }

  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> map_;
};

/// Greedy tolerance-matched multiset comparison of (center, radius) items.
/// Candidates are found through a spatial hash with cell size tol*1e3; ties
/// are broken by smallest distance, then lowest index.
struct MultisetMatch {
  bool equal = false;
  std::vector<std::size_t> unmatched_a;
  std::vector<std::size_t> unmatched_b;
};

MultisetMatch match_multisets(const std::vector<Circle>& a,
                              const std::vector<Circle>& b, double tol);

}  // namespace lensworks

#endif  // LENSWORKS_SPATIAL_HASH_HPP
