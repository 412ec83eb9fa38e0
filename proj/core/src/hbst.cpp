#include <algorithm>
#include <cmath>

#include "sslam/relocalizer.hpp"

namespace sslam {

struct HbstTree::Node {
  int bit_index = -1;  // internal when >= 0
  std::unique_ptr<Node> left;
  std::unique_ptr<Node> right;
  std::vector<HbstEntry> entries;

  bool is_leaf() const { return bit_index < 0; }
};

HbstTree::HbstTree(const HbstConfig& config) : config_(config) {}
HbstTree::~HbstTree() = default;
HbstTree::HbstTree(HbstTree&&) noexcept = default;
HbstTree& HbstTree::operator=(HbstTree&&) noexcept = default;

namespace {

// Splitting bit: unused on the path, mean across the leaf closest to 0.5.
// Returns -1 when no bit separates the entries.
int pick_split_bit(const std::vector<HbstEntry>& entries,
                   const std::vector<bool>& used_bits) {
  int best_bit = -1;
  double best_score = 1.0;
  for (int bit = 0; bit < 256; ++bit) {
    if (used_bits[bit]) continue;
    int ones = 0;
    for (const auto& entry : entries) {
      if (entry.descriptor.bit(bit)) ++ones;
    }
    if (ones == 0 || ones == static_cast<int>(entries.size())) continue;
    const double score =
        std::abs(static_cast<double>(ones) / entries.size() - 0.5);
    if (score < best_score) {
      best_score = score;
      best_bit = bit;
    }
  }
  return best_bit;
}

}  // namespace

void HbstTree::insert_into(std::unique_ptr<Node>& node,
                           std::vector<HbstEntry> entries,
                           std::vector<bool>& used_bits, int depth) {
  if (entries.empty()) return;
  if (!node) {
    node = std::make_unique<Node>();
  }
  if (!node->is_leaf()) {
    std::vector<HbstEntry> zeros;
    std::vector<HbstEntry> ones;
    for (auto& entry : entries) {
      (entry.descriptor.bit(node->bit_index) ? ones : zeros)
          .push_back(std::move(entry));
    }
    used_bits[node->bit_index] = true;
    insert_into(node->left, std::move(zeros), used_bits, depth + 1);
    insert_into(node->right, std::move(ones), used_bits, depth + 1);
    used_bits[node->bit_index] = false;
    return;
  }

  node->entries.insert(node->entries.end(),
                       std::make_move_iterator(entries.begin()),
                       std::make_move_iterator(entries.end()));
  if (static_cast<int>(node->entries.size()) <= config_.max_leaf_size ||
      depth >= config_.max_depth) {
    return;
  }
  const int bit = pick_split_bit(node->entries, used_bits);
  if (bit < 0) {
    return;  // degenerate leaf, retained overfull
  }
  node->bit_index = bit;
  std::vector<HbstEntry> moved = std::move(node->entries);
  node->entries.clear();
  insert_into(node, std::move(moved), used_bits, depth);
}

void HbstTree::insert(std::vector<HbstEntry> entries) {
  size_ += entries.size();
  std::vector<bool> used_bits(256, false);
  insert_into(root_, std::move(entries), used_bits, 0);
}

std::vector<HbstTree::Match> HbstTree::query(
    const std::vector<Descriptor256>& descriptors, int max_distance) const {
  std::vector<Match> matches;
  if (!root_) return matches;

  for (int query_index = 0; query_index < static_cast<int>(descriptors.size());
       ++query_index) {
    const Descriptor256& descriptor = descriptors[query_index];
    const Node* node = root_.get();
    while (!node->is_leaf()) {
      node = descriptor.bit(node->bit_index) ? node->right.get()
                                             : node->left.get();
      if (!node) break;
    }
    if (!node) continue;

    int best_distance = max_distance + 1;
    const HbstEntry* best_entry = nullptr;
    for (const auto& entry : node->entries) {
      const int distance = hamming_distance(descriptor, entry.descriptor);
      if (distance < best_distance) {
        best_distance = distance;
        best_entry = &entry;
      }
    }
    if (best_entry) {
      matches.push_back(Match{query_index, best_entry->landmark_id,
                              best_entry->local_map_id, best_distance});
    }
  }
  return matches;
}

bool HbstTree::consistent() const {
  struct Walker {
    int max_leaf_size;
    int max_depth;

    bool walk(const Node* node, int depth,
              std::vector<std::pair<int, bool>>& path) const {
      if (!node) return true;
      if (node->is_leaf()) {
        if (static_cast<int>(node->entries.size()) > max_leaf_size &&
            depth < max_depth) {
          // overfull below max depth is only legal when unsplittable
          std::vector<bool> used(256, false);
          for (const auto& [bit, value] : path) used[bit] = true;
          if (pick_split_bit(node->entries, used) >= 0) return false;
        }
        for (const auto& entry : node->entries) {
          for (const auto& [bit, value] : path) {
            if (entry.descriptor.bit(bit) != value) return false;
          }
        }
        return true;
      }
      path.emplace_back(node->bit_index, false);
      if (!walk(node->left.get(), depth + 1, path)) return false;
      path.back().second = true;
      if (!walk(node->right.get(), depth + 1, path)) return false;
      path.pop_back();
      return true;
    }
  };
  std::vector<std::pair<int, bool>> path;
  return Walker{config_.max_leaf_size, config_.max_depth}.walk(root_.get(), 0,
                                                               path);
}

}  // namespace sslam
