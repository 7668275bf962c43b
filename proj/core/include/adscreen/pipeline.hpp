#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adscreen/corpus_io.hpp"
#include "adscreen/feature_selection.hpp"
#include "adscreen/text_analysis.hpp"
#include "adscreen/trained_model.hpp"
#include "adscreen/vectorizer.hpp"

namespace adscreen {

enum class RfeScope {
  /// Selection refit on every training fold.
  fold_nested,
  /// One selection on the whole dataset before splitting (leaks; for comparison).
  global,
};

/// Everything between labelled inputs and a classifier. Every fitted
/// transform sees training rows only.
struct PipelineSpec {
  std::string description;
  ClassifierSpec classifier;
  /// Fit TF-IDF on the training tokens and append it to the numeric block.
  bool tfidf = false;
  std::size_t tfidf_min_df = 1;
  /// Block name of the numeric table when fused with TF-IDF.
  std::string base_block = "bert";
  bool impute = true;
  bool standardize = true;
  std::optional<RfeOptions> rfe;
  RfeScope rfe_scope = RfeScope::fold_nested;
  /// Precomputed selection applied instead of fitting one.
  std::optional<FeatureMask> fixed_mask;
  std::uint64_t seed = 0;
};

/// Labelled rows: numeric features (possibly zero columns) plus, for text
/// pipelines, one token sequence per row.
struct PipelineData {
  Dataset dataset;
  std::vector<TokenSequence> tokens;

  [[nodiscard]] std::size_t rows() const noexcept { return dataset.table.rows(); }
  [[nodiscard]] const std::vector<std::string>& ids() const noexcept { return dataset.table.ids; }
  [[nodiscard]] PipelineData select_rows(std::span<const std::size_t> indices) const;
};

class FittedPipeline {
 public:
  /// Throws PreconditionError for a single-class training set.
  static FittedPipeline fit(const PipelineSpec& spec, const PipelineData& train);

  /// Feature matrix as seen by the classifier. Input columns are matched by
  /// name; a missing one raises DataError naming it.
  [[nodiscard]] Matrix transform(const PipelineData& data) const;

  [[nodiscard]] std::vector<double> predict_scores(const PipelineData& data) const;
  [[nodiscard]] std::vector<Label> predict(const PipelineData& data) const;

  [[nodiscard]] const std::vector<std::string>& input_columns() const noexcept { return input_columns_; }
  [[nodiscard]] const std::vector<std::string>& model_columns() const noexcept { return model_columns_; }
  [[nodiscard]] bool uses_tokens() const noexcept { return tfidf_.has_value(); }
  [[nodiscard]] const std::optional<TfIdfModel>& tfidf() const noexcept { return tfidf_; }
  [[nodiscard]] const std::optional<Imputer>& imputer() const noexcept { return imputer_; }
  [[nodiscard]] const std::optional<FeatureMask>& mask() const noexcept { return mask_; }
  [[nodiscard]] const std::optional<Standardizer>& standardizer() const noexcept { return standardizer_; }
  [[nodiscard]] const TrainedModel& model() const noexcept { return model_; }

  /// Plain-text artifact holding every fitted stage.
  void write(std::ostream& out) const;
  static FittedPipeline read(std::istream& in);

 private:
  [[nodiscard]] FeatureTable fuse(const PipelineData& data) const;

  std::vector<std::string> input_columns_;
  std::string base_block_;
  std::optional<TfIdfModel> tfidf_;
  std::optional<Imputer> imputer_;
  std::optional<FeatureMask> mask_;
  std::optional<Standardizer> standardizer_;
  std::vector<std::string> model_columns_;
  TrainedModel model_;
};

/// RFE fitted once on every row (after fusion and imputation), for the
/// `global` scope. Throws PreconditionError if `spec.rfe` is unset.
FeatureMask fit_global_mask(const PipelineSpec& spec, const PipelineData& data);

/// 64-bit FNV-1a, used for artifact fingerprints and input hashes.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

}  // namespace adscreen
