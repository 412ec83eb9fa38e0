#include "sslam/pose_graph.hpp"

#include <deque>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "sslam/map.hpp"

namespace sslam {

namespace {

TwistVector edge_error(const GraphEdge& edge, const Isometry3& pose_from,
                       const Isometry3& pose_to) {
  return se3_log(edge.measurement.inverse() * pose_from.inverse() * pose_to);
}

}  // namespace

Eigen::Matrix<double, 6, 6> PoseGraph::odometry_information() {
  Eigen::Matrix<double, 6, 6> information =
      Eigen::Matrix<double, 6, 6>::Zero();
  information.diagonal() << 100, 100, 100, 1000, 1000, 1000;
  return information;
}

void PoseGraph::add_node(int local_map_id, const Isometry3& pose) {
  GraphNode node;
  node.local_map_id = local_map_id;
  node.pose = pose;
  node.fixed = nodes_.empty();
  nodes_.push_back(node);
}

const GraphNode& PoseGraph::node_for_map(int local_map_id) const {
  for (const auto& node : nodes_) {
    if (node.local_map_id == local_map_id) return node;
  }
  throw std::out_of_range("PoseGraph: unknown local map id");
}

GraphNode& PoseGraph::node_for_map(int local_map_id) {
  return const_cast<GraphNode&>(
      static_cast<const PoseGraph*>(this)->node_for_map(local_map_id));
}

void PoseGraph::replace_or_add_edge(GraphEdge edge) {
  for (auto& existing : edges_) {
    if (existing.from_id == edge.from_id && existing.to_id == edge.to_id) {
      existing = std::move(edge);
      return;
    }
  }
  edges_.push_back(std::move(edge));
}

void PoseGraph::add_odometry_edge(const LocalMap& prev, const LocalMap& curr) {
  GraphEdge edge;
  edge.from_id = prev.id;
  edge.to_id = curr.id;
  edge.measurement = prev.world_to_camera * curr.camera_to_world;
  edge.information = odometry_information();
  replace_or_add_edge(std::move(edge));
}

void PoseGraph::add_closure_edge(const ClosureConstraint& constraint) {
  // T_i2j maps map_i coordinates into map_j coordinates:
  // pose_i = pose_j * T_i2j, so the edge runs j -> i.
  GraphEdge edge;
  edge.from_id = constraint.map_j;
  edge.to_id = constraint.map_i;
  edge.measurement = constraint.transform_i2j;
  edge.information = odometry_information();
  edge.information.topLeftCorner<3, 3>() *= 0.01;  // relaxed translation
  replace_or_add_edge(std::move(edge));
}

double PoseGraph::chi_squared() const {
  double chi2 = 0;
  for (const auto& edge : edges_) {
    const TwistVector error = edge_error(edge, node_for_map(edge.from_id).pose,
                                         node_for_map(edge.to_id).pose);
    chi2 += error.dot(edge.information * error);
  }
  return chi2;
}

void PoseGraph::optimize(int iterations) {
  if (nodes_.empty()) return;

  std::unordered_map<int, int> map_to_state;  // local_map_id -> node index
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    map_to_state[nodes_[i].local_map_id] = i;
  }

  // connectivity from the fixed node
  {
    std::vector<bool> reached(nodes_.size(), false);
    std::deque<int> frontier;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      if (nodes_[i].fixed) {
        reached[i] = true;
        frontier.push_back(i);
      }
    }
    while (!frontier.empty()) {
      const int index = frontier.front();
      frontier.pop_front();
      for (const auto& edge : edges_) {
        const int from = map_to_state.at(edge.from_id);
        const int to = map_to_state.at(edge.to_id);
        const int other = from == index ? to : (to == index ? from : -1);
        if (other >= 0 && !reached[other]) {
          reached[other] = true;
          frontier.push_back(other);
        }
      }
    }
    std::ostringstream unconstrained;
    bool any = false;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      if (!reached[i]) {
        unconstrained << (any ? " " : "") << nodes_[i].local_map_id;
        any = true;
      }
    }
    if (any) {
      throw std::runtime_error("PoseGraph: unconstrained nodes: " +
                               unconstrained.str());
    }
  }

  const int n = static_cast<int>(nodes_.size());
  constexpr double kStep = 1e-6;

  for (int iteration = 0; iteration < iterations; ++iteration) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(6 * n, 6 * n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(6 * n);

    for (const auto& edge : edges_) {
      const int from = map_to_state.at(edge.from_id);
      const int to = map_to_state.at(edge.to_id);
      const Isometry3& pose_from = nodes_[from].pose;
      const Isometry3& pose_to = nodes_[to].pose;
      const TwistVector error = edge_error(edge, pose_from, pose_to);

      // central finite differences over the multiplicative perturbation
      Eigen::Matrix<double, 6, 6> jac_from;
      Eigen::Matrix<double, 6, 6> jac_to;
      for (int k = 0; k < 6; ++k) {
        TwistVector delta = TwistVector::Zero();
        delta[k] = kStep;
        const Isometry3 plus = pose_perturbation(delta);
        delta[k] = -kStep;
        const Isometry3 minus = pose_perturbation(delta);
        jac_from.col(k) = (edge_error(edge, plus * pose_from, pose_to) -
                           edge_error(edge, minus * pose_from, pose_to)) /
                          (2 * kStep);
        jac_to.col(k) = (edge_error(edge, pose_from, plus * pose_to) -
                         edge_error(edge, pose_from, minus * pose_to)) /
                        (2 * kStep);
      }

      const auto add_block = [&](int row, int col,
                                 const Eigen::Matrix<double, 6, 6>& value) {
        H.block<6, 6>(6 * row, 6 * col) += value;
      };
      add_block(from, from, jac_from.transpose() * edge.information * jac_from);
      add_block(from, to, jac_from.transpose() * edge.information * jac_to);
      add_block(to, from, jac_to.transpose() * edge.information * jac_from);
      add_block(to, to, jac_to.transpose() * edge.information * jac_to);
      b.segment<6>(6 * from) += jac_from.transpose() * edge.information * error;
      b.segment<6>(6 * to) += jac_to.transpose() * edge.information * error;
    }

    // gauge: pin fixed nodes
    for (int i = 0; i < n; ++i) {
      if (!nodes_[i].fixed) continue;
      H.block(6 * i, 0, 6, 6 * n).setZero();
      H.block(0, 6 * i, 6 * n, 6).setZero();
      H.block<6, 6>(6 * i, 6 * i) = Eigen::Matrix<double, 6, 6>::Identity();
      b.segment<6>(6 * i).setZero();
    }

    H += Eigen::MatrixXd::Identity(6 * n, 6 * n);  // unit damping
    const Eigen::VectorXd dx = H.ldlt().solve(-b);

    for (int i = 0; i < n; ++i) {
      if (nodes_[i].fixed) continue;
      nodes_[i].pose = pose_perturbation(dx.segment<6>(6 * i)) * nodes_[i].pose;
    }
    if (dx.norm() < 1e-9) break;
  }
}

void PoseGraph::dump(std::ostream& out) const {
  const auto write_pose = [&out](const Isometry3& pose) {
    const Eigen::Quaterniond q(pose.linear());
    const Eigen::Vector3d t = pose.translation();
    out << t.x() << " " << t.y() << " " << t.z() << " " << q.x() << " "
        << q.y() << " " << q.z() << " " << q.w();
  };
  for (const auto& node : nodes_) {
    out << "NODE " << node.local_map_id << " ";
    write_pose(node.pose);
    out << "\n";
  }
  for (const auto& edge : edges_) {
    out << "EDGE " << edge.from_id << " " << edge.to_id << " ";
    write_pose(edge.measurement);
    for (int r = 0; r < 6; ++r) {
      for (int c = r; c < 6; ++c) {
        out << " " << edge.information(r, c);
      }
    }
    out << "\n";
  }
}

void broadcast_poses(WorldMap& world, const PoseGraph& graph) {
  Isometry3 newest_delta = Isometry3::Identity();
  bool newest_moved = false;
  std::unordered_map<int, Isometry3> map_delta;

  for (int map_id = 0; map_id < world.local_map_count(); ++map_id) {
    LocalMap& map = world.local_map(map_id);
    const Isometry3& new_pose = graph.node_for_map(map_id).pose;
    const bool unchanged =
        new_pose.matrix() == map.camera_to_world.matrix();  // bit-exact
    if (unchanged) {
      if (map_id == world.local_map_count() - 1) newest_moved = false;
      continue;
    }

    const Isometry3 delta = new_pose * map.camera_to_world.inverse();
    map_delta.emplace(map_id, delta);
    map.set_pose(new_pose);
    for (std::size_t i = 0; i < map.frame_ids.size(); ++i) {
      world.frame(map.frame_ids[i])
          .set_pose(map.camera_to_world * map.relative_frame_poses[i]);
    }
    if (map_id == world.local_map_count() - 1) {
      newest_delta = delta;
      newest_moved = true;
    }
  }

  for (int landmark_id = 0; landmark_id < world.landmark_count();
       ++landmark_id) {
    Landmark& landmark = world.landmark(landmark_id);
    const auto it = map_delta.find(landmark.last_local_map_id);
    if (it == map_delta.end()) continue;
    landmark.p_w = it->second * landmark.p_w;
    landmark.nu = landmark.omega * landmark.p_w;
  }

  // frames not yet absorbed by a local map follow the newest one
  if (newest_moved) {
    for (int frame_id : world.pending_frame_ids()) {
      Frame& frame = world.frame(frame_id);
      frame.set_pose(newest_delta * frame.camera_to_world);
    }
  }
}

}  // namespace sslam
