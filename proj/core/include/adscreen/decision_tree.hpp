#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "adscreen/label.hpp"
#include "adscreen/matrix.hpp"
#include "adscreen/random.hpp"

namespace adscreen {

/// Gini impurity 1 - sum p_i^2. Throws PreconditionError unless the
/// probabilities are non-negative and sum to 1 within 1e-9.
double gini(std::span<const double> class_probs);

/// Gini impurity of a two-class count pair.
double gini_of_counts(const ClassCounts& counts) noexcept;

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;  // rows with x <= threshold go left
  double weighted_gini = 0.0;
};

/// Exhaustive search over candidate features and the midpoints of adjacent
/// distinct sorted values for the split minimising the size-weighted child
/// Gini. Ties go to the lower feature index, then the lower threshold.
/// Returns nullopt when no admissible split lowers the parent's impurity.
///
/// `rows` may repeat indices (bootstrap samples); repeats count as weight.
std::optional<Split> best_split(const Matrix& x, std::span<const Label> y,
                                std::span<const std::size_t> rows,
                                std::span<const std::size_t> candidate_features,
                                std::size_t min_samples_leaf = 1);

/// Flat binary tree; node 0 is the root. Leaves have feature == kLeaf.
struct TreeNode {
  static constexpr std::int64_t kLeaf = -1;

  std::int64_t feature = kLeaf;
  double threshold = 0.0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  ClassCounts counts{};  // training rows reaching the node, per class

  [[nodiscard]] bool is_leaf() const noexcept { return feature == kLeaf; }
  [[nodiscard]] double prob_ad() const noexcept;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;

  [[nodiscard]] const TreeNode& leaf_for(std::span<const double> row) const;
  /// Leaf majority; an even leaf predicts cn.
  [[nodiscard]] Label predict(std::span<const double> row) const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct TreeConfig {
  std::size_t max_depth = 12;
  std::size_t min_samples_leaf = 2;
  /// Random candidate features drawn per split; 0 means all features.
  std::size_t features_per_split = 0;
};

DecisionTree grow_tree(const Matrix& x, std::span<const Label> y,
                       std::span<const std::size_t> rows, const TreeConfig& config, Rng& rng);

}  // namespace adscreen
