#include "adscreen/random_forest.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "adscreen/error.hpp"

namespace adscreen {

namespace {

std::size_t ceil_sqrt(std::size_t p) {
  std::size_t k = 0;
  while (k * k < p) ++k;
  return std::max<std::size_t>(k, 1);
}

DecisionTree grow_bagged_tree(const Matrix& x, std::span<const Label> y, const TreeConfig& tree_config,
                              std::uint64_t seed, std::size_t tree_index) {
  Rng rng(derive_seed(seed, tree_index));
  std::vector<std::size_t> sample(x.rows());
  for (auto& s : sample) s = rng.uniform_index(x.rows());
  return grow_tree(x, y, sample, tree_config, rng);
}

}  // namespace

ForestModel train_forest(const Matrix& x, std::span<const Label> y, const ForestConfig& config,
                         std::size_t jobs) {
  if (x.rows() != y.size()) throw PreconditionError("train_forest: rows and labels differ");
  const ClassCounts counts = count_classes(y);
  if (counts[0] == 0 || counts[1] == 0) {
    throw PreconditionError("random forest needs both classes in the training set");
  }
  if (config.n_trees == 0) throw PreconditionError("random forest needs at least one tree");

  ForestModel model;
  model.config = config;
  if (model.config.features_per_split == 0) model.config.features_per_split = ceil_sqrt(x.cols());
  model.n_features = x.cols();
  model.trees.resize(config.n_trees);

  const TreeConfig tree_config{model.config.max_depth, model.config.min_samples_leaf,
                               model.config.features_per_split};
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, config.n_trees);
  if (workers == 1) {
    for (std::size_t t = 0; t < config.n_trees; ++t) {
      model.trees[t] = grow_bagged_tree(x, y, tree_config, config.seed, t);
    }
    return model;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < config.n_trees; t = next++) {
          try {
            model.trees[t] = grow_bagged_tree(x, y, tree_config, config.seed, t);
          } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return model;
}

double forest_vote_fraction(const ForestModel& model, std::span<const double> row) {
  std::size_t ad_votes = 0;
  for (const auto& tree : model.trees) ad_votes += tree.predict(row) == Label::ad ? 1 : 0;
  return static_cast<double>(ad_votes) / static_cast<double>(model.trees.size());
}

Label forest_predict(const ForestModel& model, std::span<const double> row) {
  std::size_t ad_votes = 0;
  for (const auto& tree : model.trees) ad_votes += tree.predict(row) == Label::ad ? 1 : 0;
  return 2 * ad_votes > model.trees.size() ? Label::ad : Label::cn;
}

std::vector<double> forest_importances(const ForestModel& model) {
  std::vector<double> importance(model.n_features, 0.0);
  for (const auto& tree : model.trees) {
    for (const auto& node : tree.nodes) {
      if (node.is_leaf()) continue;
      const auto& l = tree.nodes[node.left];
      const auto& r = tree.nodes[node.right];
      auto weighted = [](const TreeNode& n) {
        return static_cast<double>(n.counts[0] + n.counts[1]) * gini_of_counts(n.counts);
      };
      importance[static_cast<std::size_t>(node.feature)] += weighted(node) - weighted(l) - weighted(r);
    }
  }
  double total = 0.0;
  for (double v : importance) total += v;
  if (total > 0.0) {
    for (double& v : importance) v /= total;
  }
  return importance;
}

}  // namespace adscreen
