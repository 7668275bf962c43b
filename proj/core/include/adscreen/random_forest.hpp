#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adscreen/decision_tree.hpp"

namespace adscreen {

struct ForestConfig {
  std::size_t n_trees = 100;
  std::size_t max_depth = 12;
  std::size_t min_samples_leaf = 2;
  /// 0 selects ceil(sqrt(p)) at training time.
  std::size_t features_per_split = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const ForestConfig&, const ForestConfig&) = default;
};

struct ForestModel {
  ForestConfig config;  // features_per_split resolved
  std::size_t n_features = 0;
  std::vector<DecisionTree> trees;

  friend bool operator==(const ForestModel&, const ForestModel&) = default;
};

/// Bagged Gini trees. Tree t is grown from its own generator seeded with
/// derive_seed(seed, t), so any `jobs` value gives the same forest.
ForestModel train_forest(const Matrix& x, std::span<const Label> y, const ForestConfig& config,
                         std::size_t jobs = 1);

/// Fraction of trees voting ad.
double forest_vote_fraction(const ForestModel& model, std::span<const double> row);

/// Majority vote; a tied vote predicts cn.
Label forest_predict(const ForestModel& model, std::span<const double> row);

/// Mean decrease in Gini impurity per feature, normalised to sum to 1
/// (all zeros when no tree splits).
std::vector<double> forest_importances(const ForestModel& model);

}  // namespace adscreen
