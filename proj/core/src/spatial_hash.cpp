#include "lensworks/spatial_hash.hpp"

#include <limits>

namespace lensworks {

MultisetMatch match_multisets(const std::vector<Circle>& a,
                              const std::vector<Circle>& b, double tol) {
  SpatialHash hash(tol * 1e3);
  for (std::size_t i = 0; i < b.size(); ++i) hash.insert(b[i].center, i);

  std::vector<bool> taken(b.size(), false);
  MultisetMatch result;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = b.size();
    hash.for_neighbors(a[i].center, [&](std::size_t j) {
      if (taken[j]) return;
      double d = a[i].center.dist(b[j].center);
      if (d > tol || std::abs(a[i].radius - b[j].radius) > tol) return;
      if (d < best || (d == best && j < best_j)) {
        best = d;
        best_j = j;
      }
    });
    if (best_j < b.size()) {
      taken[best_j] = true;
    } else {
      result.unmatched_a.push_back(i);
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!taken[j]) result.unmatched_b.push_back(j);
  }
  result.equal = result.unmatched_a.empty() && result.unmatched_b.empty();
  return result;
}

}  // namespace lensworks
