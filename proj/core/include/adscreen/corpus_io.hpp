#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adscreen/label.hpp"
#include "adscreen/matrix.hpp"

namespace adscreen {

/// One subject's transcript.
struct Document {
  std::string id;
  std::string text;
};

/// Documents ordered lexicographically by id, plus non-fatal loader notes.
struct DocumentSet {
  std::vector<Document> documents;
  std::vector<std::string> warnings;

  [[nodiscard]] std::size_t size() const noexcept { return documents.size(); }
  [[nodiscard]] const Document* find(std::string_view id) const;
};

struct TranscriptOptions {
  bool allow_empty = false;
};

/// Reads every `<id>.txt` file (extension matched case-insensitively) in
/// `dir`. The id is the NFC-normalised file stem and is compared
/// case-sensitively, so `S1.txt` and `S1.TXT` collide.
DocumentSet load_transcripts(const std::filesystem::path& dir,
                             const TranscriptOptions& options = {});

/// Subject id -> class label.
using LabelMap = std::map<std::string, Label, std::less<>>;

/// Reads a CSV whose header is exactly `id,label`.
LabelMap load_labels(const std::filesystem::path& csv_path);

/// Named feature matrix keyed by subject id. Missing values (allowed only for
/// tables loaded or built with missing markers) are stored as NaN.
struct FeatureTable {
  std::vector<std::string> ids;
  std::vector<std::string> column_names;
  Matrix values;

  [[nodiscard]] std::size_t rows() const noexcept { return ids.size(); }
  [[nodiscard]] std::size_t cols() const noexcept { return column_names.size(); }
  [[nodiscard]] std::optional<std::size_t> column_index(std::string_view name) const;
  [[nodiscard]] std::optional<std::size_t> row_index(std::string_view id) const;
  [[nodiscard]] FeatureTable select_rows(std::span<const std::size_t> indices) const;
  [[nodiscard]] bool has_missing() const;

  /// Shape, uniqueness, and (unless `allow_missing`) finiteness checks.
  void validate(bool allow_missing = false) const;

  friend bool operator==(const FeatureTable&, const FeatureTable&) = default;
};

struct FeatureTableOptions {
  std::optional<std::size_t> expected_width;
  /// Accept `NA` cells as missing values (linguistic tables with undefined metrics).
  bool allow_missing = false;
};

inline constexpr std::size_t kEgemapsWidth = 88;
inline constexpr std::size_t kEmbeddingWidth = 768;

FeatureTable load_feature_table(const std::filesystem::path& csv_path,
                                const FeatureTableOptions& options = {});
void write_feature_table(const std::filesystem::path& csv_path, const FeatureTable& table);
void write_feature_table(std::ostream& out, const FeatureTable& table);

/// Feature table joined with row-aligned class labels.
struct Dataset {
  FeatureTable table;
  std::vector<Label> labels;

  [[nodiscard]] std::size_t rows() const noexcept { return labels.size(); }
  [[nodiscard]] Dataset select_rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

enum class AlignMode { strict, lenient };

struct Alignment {
  Dataset dataset;
  std::vector<std::string> dropped_ids;
};

/// Attaches labels to table rows, keeping table row order.
Alignment align_dataset(const FeatureTable& table, const LabelMap& labels,
                        AlignMode mode = AlignMode::strict);

struct SplitOptions {
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  bool stratified = true;
};

/// Row indices of a train/test partition, each ascending.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified split keeps ceil(n_c * fraction) rows of each class for
/// training (remainder rows go to training), clamped so both sides receive at
/// least one row of every class.
SplitIndices split_indices(std::span<const Label> labels, const SplitOptions& options);

std::pair<Dataset, Dataset> split_train_test(const Dataset& dataset, const SplitOptions& options);

}  // namespace adscreen
