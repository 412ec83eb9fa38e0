#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "helpers.hpp"
#include "sslam/stereo.hpp"
#include "sslam/synthworld.hpp"

using namespace sslam;
using sslam::testing::default_rig;

namespace {

Descriptor256 random_descriptor(SplitMix& rng) {
  Descriptor256 d;
  for (auto& word : d.words) word = rng.next();
  return d;
}

// Independent per-row greedy reference: within each row, left keypoints
// in column order claim the lowest-distance right keypoint with strictly
// smaller column, never reusing a right keypoint at or before a previous
// match (the scan pointer only moves forward). Ties keep the earliest
// column.
std::vector<std::pair<KeypointWD, KeypointWD>> oracle_match(
    std::vector<KeypointWD> left, std::vector<KeypointWD> right,
    int max_distance) {
  const auto row_major = [](const KeypointWD& a, const KeypointWD& b) {
    return std::make_pair(a.r, a.c) < std::make_pair(b.r, b.c);
  };
  std::sort(left.begin(), left.end(), row_major);
  std::sort(right.begin(), right.end(), row_major);

  std::map<int, std::vector<KeypointWD>> right_rows;
  for (const auto& kp : right) right_rows[kp.r].push_back(kp);

  std::vector<std::pair<KeypointWD, KeypointWD>> pairs;
  std::map<int, std::size_t> cursor;
  for (const auto& kp : left) {
    const auto row = right_rows.find(kp.r);
    if (row == right_rows.end()) continue;
    const auto& candidates = row->second;
    int best_distance = max_distance;
    int best_index = -1;
    for (std::size_t j = cursor[kp.r]; j < candidates.size(); ++j) {
      if (candidates[j].c >= kp.c) break;
      const int distance = hamming_distance(kp.d, candidates[j].d);
      if (distance < best_distance) {
        best_distance = distance;
        best_index = static_cast<int>(j);
      }
    }
    if (best_index >= 0) {
      pairs.emplace_back(kp, candidates[best_index]);
      cursor[kp.r] = best_index + 1;
    }
  }
  return pairs;
}

}  // namespace

TEST_CASE("match_stereo agrees with the per-row greedy reference") {
  SplitMix rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<KeypointWD> left, right;
    const int rows = 1 + static_cast<int>(rng.next() % 8);
    const int n_left = static_cast<int>(rng.next() % 60);
    const int n_right = static_cast<int>(rng.next() % 60);
    for (int i = 0; i < n_left; ++i) {
      left.push_back({static_cast<int>(rng.next() % rows) * 3,
                      static_cast<int>(rng.next() % 100), 0,
                      random_descriptor(rng)});
    }
    for (int i = 0; i < n_right; ++i) {
      KeypointWD kp{static_cast<int>(rng.next() % rows) * 3,
                    static_cast<int>(rng.next() % 100), 0, {}};
      // half the right keypoints clone a left descriptor (plausible pairs),
      // the rest are noise
      if (!left.empty() && (rng.next() & 1)) {
        kp.d = left[rng.next() % left.size()].d;
      } else {
        kp.d = random_descriptor(rng);
      }
      right.push_back(kp);
    }

    const auto got = match_stereo(left, right, 25);
    const auto expected = oracle_match(left, right, 25);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].first.r == expected[i].first.r);
      CHECK(got[i].first.c == expected[i].first.c);
      CHECK(got[i].second.r == expected[i].second.r);
      CHECK(got[i].second.c == expected[i].second.c);
    }

    // structural invariants regardless of the reference
    std::set<std::pair<int, int>> used_right;
    int last_right_c = -1;
    int last_row = -1;
    for (const auto& [l, r] : got) {
      CHECK(l.r == r.r);
      CHECK(r.c < l.c);
      CHECK(hamming_distance(l.d, r.d) < 25);
      CHECK(used_right.insert({r.r, r.c}).second);  // one-to-one
      if (l.r == last_row) CHECK(r.c > last_right_c);
      last_row = l.r;
      last_right_c = r.c;
    }
  }
}

TEST_CASE("match_stereo picks the best descriptor, not the nearest column") {
  SplitMix rng(67);
  const Descriptor256 target = random_descriptor(rng);
  Descriptor256 close_match = target;
  close_match.words[0] ^= 0x7;  // distance 3
  Descriptor256 near_column = target;
  for (int i = 0; i < 20; ++i) near_column.words[i % 4] ^= 1ull << (3 * i);

  std::vector<KeypointWD> left = {{10, 80, 0, target}};
  std::vector<KeypointWD> right = {{10, 40, 0, close_match},
                                   {10, 70, 0, near_column}};
  const auto pairs = match_stereo(left, right, 25);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].second.c == 40);
}

TEST_CASE("match_stereo respects the distance gate and disparity sign") {
  SplitMix rng(71);
  const Descriptor256 d = random_descriptor(rng);
  Descriptor256 far_descriptor = d;
  for (int i = 0; i < 30; ++i) far_descriptor.words[i % 4] ^= 1ull << (2 * i);

  // same row, smaller column, but distance >= max: no match
  CHECK(match_stereo({{5, 50, 0, d}}, {{5, 30, 0, far_descriptor}}, 25).empty());
  // identical descriptor but column to the right: no match
  CHECK(match_stereo({{5, 50, 0, d}}, {{5, 60, 0, d}}, 25).empty());
  // identical descriptor on another row: no match
  CHECK(match_stereo({{5, 50, 0, d}}, {{6, 30, 0, d}}, 25).empty());
  // well-formed pair matches
  CHECK(match_stereo({{5, 50, 0, d}}, {{5, 30, 0, d}}, 25).size() == 1);
}

TEST_CASE("build_frame triangulates rasterized synthetic points") {
  SceneSpec spec;
  spec.seed = 13;
  spec.point_count = 300;
  spec.length = 10;
  spec.rig = default_rig();
  const Scene scene = generate_scene(spec);

  const RenderedFrame rendered = render_frame(scene, scene.poses[0], true, 0);
  REQUIRE(rendered.keypoints.size() > 30);
  ImageU8 left, right;
  rasterize_frame(rendered, spec.rig, left, right);

  WorldMap world;
  DetectorState detector;
  const Frame& frame =
      build_frame(world, left, right, spec.rig, detector,
                  Isometry3::Identity(), FrameBuildConfig{});
  CHECK(!frame.degenerate);
  CHECK(frame.points.size() > 20);

  // each framepoint's depth agrees with the rendered point at its pixel
  std::map<std::pair<int, int>, double> truth_depth;
  for (const auto& kp : rendered.keypoints) {
    truth_depth[{static_cast<int>(std::lround(kp.left.r)),
                 static_cast<int>(std::lround(kp.left.c))}] = kp.depth;
  }
  int verified = 0;
  for (const auto& point : frame.points) {
    const auto it = truth_depth.find({point.k_left.r, point.k_left.c});
    if (it == truth_depth.end()) continue;
    // integer-pixel quantization perturbs the disparity by at most one
    // pixel (each column rounds by half a pixel)
    const double rig_b = spec.rig.baseline;
    CHECK(std::abs(rig_b / point.p_c.z() - rig_b / it->second) < 1.05);
    ++verified;
  }
  CHECK(verified > 20);
}

TEST_CASE("build_frame flags a textureless pair as degenerate") {
  WorldMap world;
  DetectorState detector;
  const StereoRig rig = default_rig();
  const ImageU8 black(640, 480, 0);
  const Frame& frame = build_frame(world, black, black, rig, detector,
                                   Isometry3::Identity(), FrameBuildConfig{});
  CHECK(frame.degenerate);
  CHECK(frame.points.empty());
  CHECK(world.frame_count() == 1);  // the frame still exists
}
