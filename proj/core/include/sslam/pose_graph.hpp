#pragma once

#include <iosfwd>
#include <vector>

#include "sslam/geometry.hpp"
#include "sslam/relocalizer.hpp"

namespace sslam {

class WorldMap;
struct LocalMap;

struct GraphNode {
  int local_map_id = -1;
  Isometry3 pose = Isometry3::Identity();  // map-to-world
  bool fixed = false;
};

struct GraphEdge {
  int from_id = -1;
  int to_id = -1;
  Isometry3 measurement = Isometry3::Identity();  // relative transform
  Eigen::Matrix<double, 6, 6> information =
      Eigen::Matrix<double, 6, 6>::Identity();
};

// SE(3) pose graph over local maps, optimized by identity-damped
// Gauss-Newton with multiplicative on-manifold updates.
class PoseGraph {
 public:
  // translation block first, then rotation
  static Eigen::Matrix<double, 6, 6> odometry_information();

  /// The first node added is fixed (gauge).
  void add_node(int local_map_id, const Isometry3& pose);

  /// Odometry edge with measurement prev.world_to_camera *
  /// curr.camera_to_world. A duplicate ordered pair replaces the edge.
  void add_odometry_edge(const LocalMap& prev, const LocalMap& curr);

  /// Closure edge with the translational information block relaxed by
  /// a factor 0.01.
  void add_closure_edge(const ClosureConstraint& constraint);

  /// Runs up to `iterations` damped Gauss-Newton steps; stops early when
  /// the update norm drops below 1e-9. Throws std::runtime_error naming
  /// unconstrained nodes if the graph is disconnected.
  void optimize(int iterations);

  double chi_squared() const;

  const std::vector<GraphNode>& nodes() const { return nodes_; }
  std::vector<GraphNode>& nodes() { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const GraphNode& node_for_map(int local_map_id) const;
  GraphNode& node_for_map(int local_map_id);

  /// Plain-text dump: nodes as id + 7 pose numbers (tx ty tz qx qy qz qw),
  /// edges as ids + 7 pose numbers + 21 upper-triangular information
  /// entries.
  void dump(std::ostream& out) const;

 private:
  void replace_or_add_edge(GraphEdge edge);
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
};

/// Applies optimized node poses back to the world: frame poses are
/// recomputed from the stored per-frame relative poses, landmarks move
/// rigidly with the map that most recently observed them. Pending frames
/// follow the newest map. Maps whose pose is bit-identical are left
/// untouched.
void broadcast_poses(WorldMap& world, const PoseGraph& graph);

}  // namespace sslam
