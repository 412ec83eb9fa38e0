#include <benchmark/benchmark.h>

#include "sslam/frontend.hpp"
#include "sslam/stereo.hpp"
#include "sslam/synthworld.hpp"
#include "sslam/tracker.hpp"

namespace {

using namespace sslam;

StereoRig bench_rig() {
  return StereoRig::rectified(700, 700, 620, 188, 1241, 376, 350);
}

Scene bench_scene(int point_count) {
  SceneSpec spec;
  spec.seed = 77;
  spec.point_count = point_count;
  spec.length = 20;
  spec.speed = 4;
  spec.rig = bench_rig();
  return generate_scene(spec);
}

void stereo_pair(const Scene& scene, int index, ImageU8& left, ImageU8& right) {
  const RenderedFrame rendered =
      render_frame(scene, scene.poses[index], true, index);
  rasterize_frame(rendered, scene.spec.rig, left, right);
}

void BM_DetectFast(benchmark::State& state) {
  const Scene scene = bench_scene(700);
  ImageU8 left, right;
  stereo_pair(scene, 0, left, right);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_fast(left, 20));
  }
}
BENCHMARK(BM_DetectFast);

void BM_ExtractBrief(benchmark::State& state) {
  const Scene scene = bench_scene(700);
  ImageU8 left, right;
  stereo_pair(scene, 0, left, right);
  const auto keypoints = detect_fast(left, 20);
  for (auto _ : state) {
    for (const auto& kp : keypoints) {
      benchmark::DoNotOptimize(extract_brief(left, kp));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(keypoints.size()));
}
BENCHMARK(BM_ExtractBrief);

void BM_MatchStereo(benchmark::State& state) {
  SplitMix rng(5);
  const auto make_side = [&rng](int count) {
    std::vector<KeypointWD> keypoints;
    for (int i = 0; i < count; ++i) {
      KeypointWD kp{static_cast<int>(rng.next() % 376),
                    static_cast<int>(rng.next() % 1241), 0, {}};
      for (auto& word : kp.d.words) word = rng.next();
      keypoints.push_back(kp);
    }
    return keypoints;
  };
  const auto left = make_side(static_cast<int>(state.range(0)));
  const auto right = make_side(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(match_stereo(left, right, 25));
  }
}
BENCHMARK(BM_MatchStereo)->Arg(700)->Arg(7000);

void BM_BuildFrame(benchmark::State& state) {
  const Scene scene = bench_scene(700);
  ImageU8 left, right;
  stereo_pair(scene, 0, left, right);
  const StereoRig rig = bench_rig();
  for (auto _ : state) {
    WorldMap world;
    DetectorState detector;
    benchmark::DoNotOptimize(build_frame(world, left, right, rig, detector,
                                         Isometry3::Identity(),
                                         FrameBuildConfig{}));
  }
}
BENCHMARK(BM_BuildFrame);

void BM_OptimizePose(benchmark::State& state) {
  const StereoRig rig = bench_rig();
  const Scene scene = bench_scene(700);
  WorldMap world;
  const RenderedFrame ra = render_frame(scene, scene.poses[0], false, 0);
  const RenderedFrame rb = render_frame(scene, scene.poses[1], false, 1);
  std::vector<int> ids_a, ids_b;
  Frame& fa = frame_from_rendered(world, ra, rig, scene.poses[0], &ids_a);
  Frame& fb = frame_from_rendered(world, rb, rig, scene.poses[1], &ids_b);
  for (int j = 0; j < static_cast<int>(ids_b.size()); ++j) {
    for (int i = 0; i < static_cast<int>(ids_a.size()); ++i) {
      if (ids_a[i] == ids_b[j]) {
        link_track(world, {fa.id, i}, {fb.id, j});
        break;
      }
    }
  }
  const Isometry3 prior = fb.world_to_camera;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_pose(world, fb, prior, TrackerConfig{}));
  }
}
BENCHMARK(BM_OptimizePose);

void BM_HammingDistance(benchmark::State& state) {
  SplitMix rng(9);
  std::vector<Descriptor256> descriptors(2048);
  for (auto& d : descriptors) {
    for (auto& word : d.words) word = rng.next();
  }
  for (auto _ : state) {
    int sum = 0;
    for (std::size_t i = 1; i < descriptors.size(); ++i) {
      sum += hamming_distance(descriptors[i - 1], descriptors[i]);
    }
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(descriptors.size() - 1));
}
BENCHMARK(BM_HammingDistance);

}  // namespace

BENCHMARK_MAIN();
