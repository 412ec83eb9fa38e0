#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "sslam/map.hpp"
#include "sslam/pose_graph.hpp"

using namespace sslam;
using sslam::testing::default_rig;

namespace {

Isometry3 translation(double x, double y, double z) {
  Isometry3 t = Isometry3::Identity();
  t.translation() = Eigen::Vector3d(x, y, z);
  return t;
}

// chain of local maps with consistent odometry edges; returns the poses
std::vector<Isometry3> build_chain(PoseGraph& graph, WorldMap& world,
                                   const std::vector<Isometry3>& poses) {
  for (std::size_t i = 0; i < poses.size(); ++i) {
    LocalMap& map = world.create_local_map();
    map.set_pose(poses[i]);
    graph.add_node(map.id, map.camera_to_world);
    if (i > 0) {
      graph.add_odometry_edge(world.local_map(static_cast<int>(i) - 1), map);
    }
  }
  return poses;
}

}  // namespace

TEST_CASE("information matrices carry the specified weights") {
  const auto odometry = PoseGraph::odometry_information();
  for (int i = 0; i < 3; ++i) {
    CHECK(odometry(i, i) == 100.0);
    CHECK(odometry(i + 3, i + 3) == 1000.0);
  }
  CHECK(odometry.sum() == 3 * 100.0 + 3 * 1000.0);  // diagonal only

  PoseGraph graph;
  WorldMap world;
  build_chain(graph, world, {Isometry3::Identity(), translation(0, 0, 5),
                             translation(0, 0, 10)});
  ClosureConstraint closure;
  closure.map_i = 2;
  closure.map_j = 0;
  graph.add_closure_edge(closure);
  REQUIRE(graph.edges().size() == 3);
  const auto& information = graph.edges()[2].information;
  for (int i = 0; i < 3; ++i) {
    CHECK(information(i, i) == doctest::Approx(1.0));      // 100 * 0.01
    CHECK(information(i + 3, i + 3) == doctest::Approx(1000.0));
  }
}

TEST_CASE("first node is fixed, duplicate edges are replaced") {
  PoseGraph graph;
  WorldMap world;
  build_chain(graph, world,
              {Isometry3::Identity(), translation(0, 0, 5), translation(0, 0, 10)});
  CHECK(graph.nodes()[0].fixed);
  CHECK(!graph.nodes()[1].fixed);
  CHECK(graph.edges().size() == 2);

  // re-adding the same ordered pair replaces rather than duplicates
  graph.add_odometry_edge(world.local_map(0), world.local_map(1));
  CHECK(graph.edges().size() == 2);
}

TEST_CASE("optimize leaves a consistent chain untouched") {
  PoseGraph graph;
  WorldMap world;
  SplitMix rng(151);
  std::vector<Isometry3> poses{Isometry3::Identity()};
  for (int i = 1; i < 6; ++i) {
    poses.push_back(poses.back() *
                    sslam::testing::random_isometry(rng, 3.0, 0.3));
  }
  build_chain(graph, world, poses);

  CHECK(graph.chi_squared() < 1e-18);
  graph.optimize(10);
  for (std::size_t i = 0; i < poses.size(); ++i) {
    CHECK((graph.nodes()[i].pose.matrix() - poses[i].matrix()).norm() < 1e-10);
  }
}

TEST_CASE("optimize pulls a corrupted loop back to the measurements") {
  // square loop: four 5 m legs with 90 degree turns, closed by an edge
  PoseGraph graph;
  WorldMap world;
  std::vector<Isometry3> poses;
  Isometry3 pose = Isometry3::Identity();
  for (int i = 0; i < 4; ++i) {
    poses.push_back(pose);
    Isometry3 step = Isometry3::Identity();
    step.translation() = Eigen::Vector3d(0, 0, 5);
    step.linear() =
        Eigen::AngleAxisd(M_PI / 2, Eigen::Vector3d::UnitY()).toRotationMatrix();
    pose = pose * step;
  }
  build_chain(graph, world, poses);
  // closing edge 3 -> 0 from the ground-truth relative pose
  GraphEdge* closing = nullptr;
  {
    LocalMap& last = world.local_map(3);
    LocalMap virtual_first;
    virtual_first.id = 0;
    virtual_first.set_pose(poses[0]);
    graph.add_odometry_edge(last, virtual_first);
  }
  REQUIRE(graph.edges().size() == 4);
  (void)closing;

  // corrupt node 2 and optimize
  const Isometry3 saved = graph.nodes()[2].pose;
  graph.nodes()[2].pose =
      pose_perturbation((TwistVector() << 0.4, -0.2, 0.3, 0.05, 0.1, -0.04)
                            .finished()) *
      saved;
  const double chi2_before = graph.chi_squared();
  CHECK(chi2_before > 1.0);

  graph.optimize(100);
  CHECK(graph.chi_squared() < chi2_before * 1e-6);
  for (int i = 0; i < 4; ++i) {
    CHECK((graph.nodes()[i].pose.translation() - poses[i].translation()).norm() <
          1e-6);
    CHECK(rotation_angle(graph.nodes()[i].pose.inverse() * poses[i]) < 1e-6);
  }
}

TEST_CASE("optimize throws on a disconnected graph naming the orphans") {
  PoseGraph graph;
  graph.add_node(0, Isometry3::Identity());
  graph.add_node(7, translation(0, 0, 5));
  try {
    graph.optimize(5);
    FAIL("expected std::runtime_error");
  } catch (const std::runtime_error& error) {
    CHECK(std::string(error.what()).find("7") != std::string::npos);
  }
}

TEST_CASE("dump writes nodes and edges in the documented layout") {
  PoseGraph graph;
  WorldMap world;
  build_chain(graph, world, {Isometry3::Identity(), translation(1, 2, 3)});

  std::ostringstream out;
  graph.dump(out);
  std::istringstream in(out.str());

  std::string tag;
  int id;
  in >> tag >> id;
  CHECK(tag == "NODE");
  CHECK(id == 0);
  double values[7];
  for (double& v : values) in >> v;
  CHECK(values[6] == 1.0);  // identity quaternion w

  in >> tag >> id;
  CHECK(tag == "NODE");
  CHECK(id == 1);
  for (double& v : values) in >> v;
  CHECK(values[0] == 1.0);
  CHECK(values[1] == 2.0);
  CHECK(values[2] == 3.0);

  int from, to;
  in >> tag >> from >> to;
  CHECK(tag == "EDGE");
  CHECK(from == 0);
  CHECK(to == 1);
  for (double& v : values) in >> v;  // measurement
  CHECK(values[0] == 1.0);
  double info[21];
  for (double& v : info) in >> v;  // upper triangle
  CHECK(info[0] == 100.0);
  CHECK(!in.fail());
}

TEST_CASE("broadcast_poses leaves untouched maps bit-identical") {
  const StereoRig rig = default_rig();
  WorldMap world;
  PoseGraph graph;

  Frame& frame = world.create_frame(&rig, 0);
  frame.set_pose(translation(0.5, 0, 2));
  LocalMap& map = world.create_local_map();
  map.set_pose(translation(0, 0, 2));
  map.frame_ids = {frame.id};
  map.relative_frame_poses = {map.world_to_camera * frame.camera_to_world};
  graph.add_node(map.id, map.camera_to_world);

  const Eigen::Matrix4d before = frame.camera_to_world.matrix();
  broadcast_poses(world, graph);
  CHECK(frame.camera_to_world.matrix() == before);
  CHECK(map.camera_to_world.matrix() == translation(0, 0, 2).matrix());
}

TEST_CASE("broadcast_poses moves frames, landmarks and pending frames rigidly") {
  const StereoRig rig = default_rig();
  WorldMap world;
  PoseGraph graph;

  Frame& inside = world.create_frame(&rig, 0);
  inside.set_pose(translation(0.5, 0.1, 2));
  LocalMap& map = world.create_local_map();
  map.set_pose(translation(0, 0, 2));
  map.frame_ids = {inside.id};
  map.relative_frame_poses = {map.world_to_camera * inside.camera_to_world};

  Landmark& landmark = world.create_landmark();
  landmark.p_w = Eigen::Vector3d(1, -1, 8);
  landmark.omega = Eigen::Matrix3d::Identity() * 4;
  landmark.nu = landmark.omega * landmark.p_w;
  landmark.last_local_map_id = map.id;
  map.landmark_ids = {landmark.id};

  Frame& pending = world.create_frame(&rig, 0.1);
  pending.set_pose(translation(0.6, 0.1, 2.5));
  world.pending_frame_ids().push_back(pending.id);

  graph.add_node(map.id, map.camera_to_world);
  // move the map in the graph by a rigid delta
  const Isometry3 delta =
      se3_exp((TwistVector() << 0.3, -0.1, 0.5, 0.02, -0.01, 0.04).finished());
  graph.nodes()[0].pose = delta * map.camera_to_world;

  const Isometry3 frame_before = inside.camera_to_world;
  const Isometry3 pending_before = pending.camera_to_world;
  const Eigen::Vector3d landmark_before = landmark.p_w;

  broadcast_poses(world, graph);

  CHECK((map.camera_to_world.matrix() - graph.nodes()[0].pose.matrix()).norm() <
        1e-12);
  CHECK((inside.camera_to_world.matrix() - (delta * frame_before).matrix())
            .norm() < 1e-12);
  CHECK((pending.camera_to_world.matrix() - (delta * pending_before).matrix())
            .norm() < 1e-12);
  CHECK((landmark.p_w - delta * landmark_before).norm() < 1e-12);
  // the information-form state stays consistent with the moved estimate
  CHECK((landmark.nu - landmark.omega * landmark.p_w).norm() < 1e-12);
}
