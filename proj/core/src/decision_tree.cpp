#include "adscreen/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "adscreen/error.hpp"

namespace adscreen {

namespace {

__extension__ using u128 = unsigned __int128;

// Split quality as the exact rational
//   (l0^2 + l1^2) / nL + (r0^2 + r1^2) / nR = num / den,
// which is n times (1 - weighted Gini). Larger is better.
struct Score {
  u128 num = 0;
  u128 den = 1;
};

Score child_score(const ClassCounts& left, const ClassCounts& right) {
  const u128 nl = left[0] + left[1];
  const u128 nr = right[0] + right[1];
  const u128 a = u128(left[0]) * left[0] + u128(left[1]) * left[1];
  const u128 b = u128(right[0]) * right[0] + u128(right[1]) * right[1];
  return {a * nr + b * nl, nl * nr};
}

int compare(const Score& x, const Score& y) {
  const u128 lhs = x.num * y.den;
  const u128 rhs = y.num * x.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

double midpoint(double a, double b) {
  const double mid = 0.5 * (a + b);
  return (mid >= a && mid < b) ? mid : a;
}

}  // namespace

double gini(std::span<const double> class_probs) {
  double sum = 0.0;
  double sq = 0.0;
  for (double p : class_probs) {
    if (!(p >= 0.0)) throw PreconditionError("gini: probabilities must be non-negative");
    sum += p;
    sq += p * p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw PreconditionError("gini: probabilities must sum to 1");
  return 1.0 - sq;
}

double gini_of_counts(const ClassCounts& counts) noexcept {
  const std::size_t n = counts[0] + counts[1];
  if (n == 0) return 0.0;
  const double p0 = static_cast<double>(counts[0]) / static_cast<double>(n);
  const double p1 = static_cast<double>(counts[1]) / static_cast<double>(n);
  return 1.0 - p0 * p0 - p1 * p1;
}

std::optional<Split> best_split(const Matrix& x, std::span<const Label> y,
                                std::span<const std::size_t> rows,
                                std::span<const std::size_t> candidate_features,
                                std::size_t min_samples_leaf) {
  const std::size_t n = rows.size();
  const std::size_t min_leaf = std::max<std::size_t>(min_samples_leaf, 1);
  if (n < 2 * min_leaf) return std::nullopt;

  ClassCounts parent{};
  for (std::size_t r : rows) ++parent[static_cast<std::size_t>(y[r])];
  const Score parent_score{u128(parent[0]) * parent[0] + u128(parent[1]) * parent[1], n};

  std::optional<Split> best;
  Score best_score = parent_score;
  std::vector<std::pair<double, Label>> column(n);

  for (std::size_t feature : candidate_features) {
    for (std::size_t i = 0; i < n; ++i) column[i] = {x(rows[i], feature), y[rows[i]]};
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    ClassCounts left{};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      ++left[static_cast<std::size_t>(column[i].second)];
      if (!(column[i].first < column[i + 1].first)) continue;
      const std::size_t n_left = i + 1;
      if (n_left < min_leaf || n - n_left < min_leaf) continue;
      const ClassCounts right{parent[0] - left[0], parent[1] - left[1]};
      const Score score = child_score(left, right);
      const int cmp = compare(score, best_score);
      // Features are visited in caller order, so ties on score must compare
      // the feature index explicitly; thresholds rise within a feature.
      const bool better =
          cmp > 0 || (cmp == 0 && best.has_value() && feature < best->feature);
      if (!better) continue;
      best_score = score;
      const double weighted =
          (static_cast<double>(n_left) * gini_of_counts(left) +
           static_cast<double>(n - n_left) * gini_of_counts(right)) /
          static_cast<double>(n);
      best = Split{feature, midpoint(column[i].first, column[i + 1].first), weighted};
    }
  }
  return best;
}

double TreeNode::prob_ad() const noexcept {
  const std::size_t n = counts[0] + counts[1];
  return n == 0 ? 0.0 : static_cast<double>(counts[1]) / static_cast<double>(n);
}

const TreeNode& DecisionTree::leaf_for(std::span<const double> row) const {
  std::size_t idx = 0;
  while (!nodes[idx].is_leaf()) {
    const TreeNode& node = nodes[idx];
    idx = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return nodes[idx];
}

Label DecisionTree::predict(std::span<const double> row) const {
  const TreeNode& leaf = leaf_for(row);
  return leaf.counts[1] > leaf.counts[0] ? Label::ad : Label::cn;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const Label> y, const TreeConfig& config, Rng& rng)
      : x_(x), y_(y), config_(config), rng_(rng), all_features_(x.cols()) {
    std::iota(all_features_.begin(), all_features_.end(), std::size_t{0});
  }

  std::uint32_t build(std::vector<std::size_t> rows, std::size_t depth) {
    const auto index = static_cast<std::uint32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    ClassCounts counts{};
    for (std::size_t r : rows) ++counts[static_cast<std::size_t>(y_[r])];
    tree_.nodes[index].counts = counts;

    const bool pure = counts[0] == 0 || counts[1] == 0;
    if (pure || depth >= config_.max_depth) return index;

    const auto split = best_split(x_, y_, rows, candidates(), config_.min_samples_leaf);
    if (!split) return index;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : rows) {
      (x_(r, split->feature) <= split->threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const std::uint32_t l = build(std::move(left), depth + 1);
    const std::uint32_t r = build(std::move(right), depth + 1);
    TreeNode& node = tree_.nodes[index];
    node.feature = static_cast<std::int64_t>(split->feature);
    node.threshold = split->threshold;
    node.left = l;
    node.right = r;
    return index;
  }

  DecisionTree take() { return std::move(tree_); }

 private:
  std::vector<std::size_t> candidates() {
    const std::size_t p = all_features_.size();
    const std::size_t k = config_.features_per_split;
    if (k == 0 || k >= p) return all_features_;
    std::vector<std::size_t> pool = all_features_;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng_.uniform_index(p - i)]);
    pool.resize(k);
    return pool;
  }

  const Matrix& x_;
  std::span<const Label> y_;
  const TreeConfig& config_;
  Rng& rng_;
  std::vector<std::size_t> all_features_;
  DecisionTree tree_;
};

}  // namespace

DecisionTree grow_tree(const Matrix& x, std::span<const Label> y,
                       std::span<const std::size_t> rows, const TreeConfig& config, Rng& rng) {
  if (rows.empty()) throw PreconditionError("grow_tree: no rows");
  TreeBuilder builder(x, y, config, rng);
  builder.build(std::vector<std::size_t>(rows.begin(), rows.end()), 0);
  return builder.take();
}

}  // namespace adscreen
