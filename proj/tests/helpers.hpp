#pragma once

#include <utility>
#include <vector>

#include "sslam/map.hpp"
#include "sslam/synthworld.hpp"
#include "sslam/tracker.hpp"

namespace sslam::testing {

inline StereoRig default_rig() {
  return StereoRig::rectified(700, 700, 620, 188, 1241, 376, 350);
}

inline TwistVector random_twist(SplitMix& rng, double translation_scale,
                                double rotation_scale) {
  TwistVector twist;
  for (int i = 0; i < 3; ++i) twist[i] = rng.uniform(-1, 1) * translation_scale;
  for (int i = 3; i < 6; ++i) twist[i] = rng.uniform(-1, 1) * rotation_scale;
  return twist;
}

inline Isometry3 random_isometry(SplitMix& rng, double translation_scale = 1.0,
                                 double rotation_scale = 1.0) {
  return se3_exp(random_twist(rng, translation_scale, rotation_scale));
}

// Two consecutive noise-free frames injected directly from rendered
// keypoints, with tracks linked through the ground-truth correspondence
// labels. Returns the number of linked pairs.
inline int build_linked_pair(WorldMap& world, const Scene& scene,
                             const StereoRig& rig, int frame_a, int frame_b) {
  const RenderedFrame ra = render_frame(scene, scene.poses[frame_a], false,
                                        static_cast<std::uint64_t>(frame_a));
  const RenderedFrame rb = render_frame(scene, scene.poses[frame_b], false,
                                        static_cast<std::uint64_t>(frame_b));
  std::vector<int> ids_a, ids_b;
  Frame& fa = frame_from_rendered(world, ra, rig, scene.poses[frame_a], &ids_a);
  Frame& fb = frame_from_rendered(world, rb, rig, scene.poses[frame_b], &ids_b);

  int linked = 0;
  for (int j = 0; j < static_cast<int>(ids_b.size()); ++j) {
    for (int i = 0; i < static_cast<int>(ids_a.size()); ++i) {
      if (ids_a[i] == ids_b[j]) {
        link_track(world, {fa.id, i}, {fb.id, j});
        ++linked;
        break;
      }
    }
  }
  return linked;
}

}  // namespace sslam::testing
