#include "sslam/map.hpp"

#include <stdexcept>

namespace sslam {

Frame& WorldMap::create_frame(const StereoRig* rig, double timestamp) {
  auto frame = std::make_unique<Frame>();
  frame->id = static_cast<int>(frames_.size());
  frame->rig = rig;
  frame->timestamp = timestamp;
  frames_.push_back(std::move(frame));
  return *frames_.back();
}

Landmark& WorldMap::create_landmark() {
  auto landmark = std::make_unique<Landmark>();
  landmark->id = static_cast<int>(landmarks_.size());
  landmarks_.push_back(std::move(landmark));
  return *landmarks_.back();
}

LocalMap& WorldMap::create_local_map() {
  auto map = std::make_unique<LocalMap>();
  map->id = static_cast<int>(maps_.size());
  maps_.push_back(std::move(map));
  return *maps_.back();
}

void link_track(WorldMap& world, const FramepointRef& prev,
                const FramepointRef& curr) {
  Framepoint& prev_point = world.resolve(prev);
  Framepoint& curr_point = world.resolve(curr);
  if (curr_point.prev.valid() || prev_point.next.valid()) {
    throw std::logic_error("link_track: framepoint already linked");
  }
  curr_point.prev = prev;
  prev_point.next = curr;
  if (prev_point.landmark_id >= 0) {
    curr_point.landmark_id = prev_point.landmark_id;
  }
}

int track_length(const WorldMap& world, const FramepointRef& fp) {
  const int limit = world.frame_count() + 1;
  int length = 0;
  FramepointRef cursor = fp;
  while (cursor.valid()) {
    ++length;
    if (length > limit) {
      throw std::logic_error("track_length: cycle detected");
    }
    cursor = world.resolve(cursor).prev;
  }
  return length;
}

}  // namespace sslam
