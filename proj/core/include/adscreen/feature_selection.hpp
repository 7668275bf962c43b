#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adscreen/corpus_io.hpp"
#include "adscreen/logistic_regression.hpp"
#include "adscreen/random_forest.hpp"

namespace adscreen {

enum class RfeScorer {
  /// |coefficient| of an L2 logistic regression on standardised columns.
  logreg_weight,
  /// Mean-decrease-in-impurity of a random forest.
  forest_importance,
};

struct RfeOptions {
  std::size_t target = 1;
  std::size_t step = 1;
  RfeScorer scorer = RfeScorer::logreg_weight;
  LogRegConfig logreg;
  ForestConfig forest;
  std::uint64_t seed = 0;
};

struct RankedFeature {
  std::string name;
  /// 0 for kept columns; otherwise higher means eliminated earlier.
  std::size_t rank = 0;

  friend bool operator==(const RankedFeature&, const RankedFeature&) = default;
};

struct FeatureMask {
  std::vector<std::string> kept;       // original column order
  std::vector<RankedFeature> ranking;  // every original column, original order
  std::size_t refits = 0;

  [[nodiscard]] std::optional<std::size_t> rank_of(std::string_view name) const;

  friend bool operator==(const FeatureMask&, const FeatureMask&) = default;
};

/// Recursive feature elimination: fit the scorer on the surviving columns
/// (re-standardised every round), drop the `step` weakest, repeat until
/// `target` remain. Equal scores drop the higher original column index first.
FeatureMask rfe(const Dataset& train, const RfeOptions& options);

/// Projects `table` onto the kept columns in mask order. Throws DataError
/// naming the first missing column.
FeatureTable apply_mask(const FeatureMask& mask, const FeatureTable& table);

/// Mask with every column kept.
FeatureMask identity_mask(const std::vector<std::string>& columns);

/// Two-column CSV `feature,rank` in original column order.
void write_mask_csv(std::ostream& out, const FeatureMask& mask);
FeatureMask read_mask_csv(const std::filesystem::path& path);

}  // namespace adscreen
