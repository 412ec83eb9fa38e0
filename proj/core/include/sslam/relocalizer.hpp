#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sslam/descriptor.hpp"
#include "sslam/map.hpp"

namespace sslam {

// Validated loop-closure constraint between two local maps.
// T_i2j maps points from map_i coordinates into map_j coordinates.
struct ClosureConstraint {
  int map_i = -1;
  int map_j = -1;
  Isometry3 transform_i2j = Isometry3::Identity();
  int inliers = 0;
  double mean_error = 0;  // m^2
};

struct HbstEntry {
  Descriptor256 descriptor;
  int landmark_id = -1;
  int local_map_id = -1;
};

struct HbstConfig {
  int max_leaf_size = 100;
  int max_depth = 16;
};

// Binary search tree over descriptor bits. Leaves split on the unused
// bit whose mean value across the leaf is closest to 0.5.
class HbstTree {
 public:
  explicit HbstTree(const HbstConfig& config = {});
  ~HbstTree();
  HbstTree(HbstTree&&) noexcept;
  HbstTree& operator=(HbstTree&&) noexcept;

  void insert(std::vector<HbstEntry> entries);

  struct Match {
    int query_index = -1;
    int landmark_id = -1;
    int local_map_id = -1;
    int distance = 0;
  };

  /// Single-path descent per query; returns the best leaf entry under
  /// max_distance, if any.
  std::vector<Match> query(const std::vector<Descriptor256>& descriptors,
                           int max_distance) const;

  std::size_t size() const { return size_; }

  /// Walks the whole tree checking that every stored descriptor agrees
  /// with the bit decisions on its root path and that leaf sizes obey
  /// the split rule. Test support.
  bool consistent() const;

 private:
  struct Node;
  void insert_into(std::unique_ptr<Node>& node, std::vector<HbstEntry> entries,
                   std::vector<bool>& used_bits, int depth);

  HbstConfig config_;
  std::unique_ptr<Node> root_;
  std::size_t size_ = 0;
};

struct CandidateOverlap {
  int local_map_id = -1;
  double overlap = 0;
  // (current landmark id, past landmark id); multiple descriptor hits to
  // one current landmark collapse to its best match
  std::vector<std::pair<int, int>> landmark_pairs;
};

/// Queries the tree with the current map's landmark descriptors and
/// reports past maps whose matched fraction reaches min_overlap,
/// excluding maps within temporal_gap of the current one.
std::vector<CandidateOverlap> find_closure_candidates(
    const HbstTree& tree, const WorldMap& world, const LocalMap& current,
    double min_overlap, int temporal_gap, int query_max_distance);

struct IcpResult {
  Isometry3 transform = Isometry3::Identity();
  int inliers = 0;
  double mean_error = 0;  // mean squared inlier residual, m^2
  bool degenerate = false;
};

/// Iterative rigid alignment over fixed correspondences: closed-form
/// least-squares fit on the current inlier set, then inlier
/// re-classification by residual, for 20 rounds. transform maps the
/// first point of each pair onto the second.
IcpResult align_icp(
    const std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>>& correspondences,
    double inlier_threshold);

/// Gate on inlier count and mean squared error.
std::optional<ClosureConstraint> validate_closure(const IcpResult& result,
                                                  int map_i, int map_j,
                                                  int min_inliers,
                                                  double max_mean_error);

struct RelocalizerConfig {
  HbstConfig tree;
  int query_max_distance = 25;  // bits
  double min_overlap = 0.15;
  int temporal_gap = 3;         // local maps
  double icp_inlier_threshold = 0.5;  // m
  int min_inliers = 25;
  double max_mean_error = 0.25;  // m^2
};

}  // namespace sslam
