#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adscreen/corpus_io.hpp"
#include "adscreen/matrix.hpp"
#include "adscreen/text_analysis.hpp"

namespace adscreen {

/// Fitted vocabulary and document frequencies.
///
/// Terms are sorted lexicographically and indexed densely; every df lies in
/// [1, corpus_size].
class TfIdfModel {
 public:
  TfIdfModel() = default;
  TfIdfModel(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
             std::size_t corpus_size);

  [[nodiscard]] const std::vector<std::string>& terms() const noexcept { return terms_; }
  [[nodiscard]] const std::vector<std::size_t>& doc_freq() const noexcept { return doc_freq_; }
  [[nodiscard]] std::size_t corpus_size() const noexcept { return corpus_size_; }
  [[nodiscard]] std::size_t vocabulary_size() const noexcept { return terms_.size(); }
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view term) const;

  /// ln(corpus_size / df) for the term at `index`.
  [[nodiscard]] double idf(std::size_t index) const;

  friend bool operator==(const TfIdfModel& a, const TfIdfModel& b) {
    return a.terms_ == b.terms_ && a.doc_freq_ == b.doc_freq_ && a.corpus_size_ == b.corpus_size_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::size_t corpus_size_ = 0;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// (column, weight) pairs with strictly increasing columns.
struct SparseVector {
  std::size_t dimension = 0;
  std::vector<std::pair<std::size_t, double>> entries;

  [[nodiscard]] std::vector<double> to_dense() const;
};

/// Terms with df < min_doc_freq are left out of the vocabulary.
TfIdfModel fit_tfidf(std::span<const TokenSequence> corpus, std::size_t min_doc_freq = 1);

/// Raw count times ln(N / df); out-of-vocabulary terms are ignored.
SparseVector transform_tfidf(const TfIdfModel& model, const TokenSequence& doc);

/// Dense table whose columns are the bare vocabulary terms.
FeatureTable tfidf_table(const TfIdfModel& model, std::span<const std::string> ids,
                         std::span<const TokenSequence> docs);

/// JSON record of vocabulary order and df for reproducing a TF-IDF table.
void write_tfidf_manifest(std::ostream& out, const TfIdfModel& model);
TfIdfModel read_tfidf_manifest(std::istream& in);

/// A named slice of features. Column names in fused output become
/// `<name>_<column>`.
struct FeatureBlock {
  std::string name;
  std::vector<std::string> column_names;
  std::vector<double> values;
  /// Schema width the block must have (768 for embeddings, 88 for eGeMAPS).
  std::optional<std::size_t> expected_width;
};

struct FusedVector {
  std::vector<std::string> column_names;
  std::vector<double> values;
};

/// Concatenates blocks in order without touching their values.
FusedVector concat_features(std::span<const FeatureBlock> blocks);

struct TableBlock {
  std::string name;
  const FeatureTable* table = nullptr;
  std::optional<std::size_t> expected_width;
};

/// Row-wise fusion of tables that share the same id sequence.
FeatureTable concat_tables(std::span<const TableBlock> blocks);

/// Per-column mean replacement of NaN missing markers, fitted on training rows.
class Imputer {
 public:
  Imputer() = default;
  explicit Imputer(std::vector<double> fill) : fill_(std::move(fill)) {}

  /// Columns with no observed value are filled with 0.
  static Imputer fit(const Matrix& train);

  [[nodiscard]] Matrix apply(const Matrix& values) const;
  [[nodiscard]] const std::vector<double>& fill_values() const noexcept { return fill_; }

  friend bool operator==(const Imputer&, const Imputer&) = default;

 private:
  std::vector<double> fill_;
};

inline constexpr double kStdFloor = 1e-12;

/// Column z-scoring with statistics from training rows only.
class Standardizer {
 public:
  Standardizer() = default;
  Standardizer(std::vector<double> mean, std::vector<double> scale)
      : mean_(std::move(mean)), scale_(std::move(scale)) {}

  /// Population standard deviation; values below kStdFloor become 1.
  /// Throws PreconditionError for fewer than two rows.
  static Standardizer fit(const Matrix& train);

  [[nodiscard]] Matrix apply(const Matrix& values) const;
  [[nodiscard]] const std::vector<double>& mean() const noexcept { return mean_; }
  [[nodiscard]] const std::vector<double>& scale() const noexcept { return scale_; }

  friend bool operator==(const Standardizer&, const Standardizer&) = default;

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

Standardizer fit_standardizer(const FeatureTable& train);
FeatureTable apply_standardizer(const Standardizer& s, const FeatureTable& table);

}  // namespace adscreen
