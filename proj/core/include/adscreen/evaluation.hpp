#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adscreen/label.hpp"
#include "adscreen/pipeline.hpp"

namespace adscreen {

/// Counts with `ad` as the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  [[nodiscard]] std::size_t total() const noexcept { return tp + fp + tn + fn; }
  /// The same counts with `cn` taken as positive.
  [[nodiscard]] ConfusionMatrix swapped() const noexcept { return {tn, fn, tp, fp}; }

  ConfusionMatrix& operator+=(const ConfusionMatrix& other) noexcept;
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted);
/// String labels are parsed case-insensitively; anything else is a DataError.
ConfusionMatrix confusion(std::span<const std::string> truth,
                          std::span<const std::string> predicted);

/// Metrics for one class taken as positive; nullopt where a denominator is 0.
struct ClassMetrics {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> specificity;
  std::optional<double> f1;

  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

enum class Metric : std::size_t { accuracy, precision, recall, specificity, f1 };
inline constexpr std::size_t kMetricCount = 5;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::accuracy, Metric::precision, Metric::recall, Metric::specificity, Metric::f1};
std::string_view metric_name(Metric m) noexcept;

struct MetricsReport {
  ConfusionMatrix confusion;
  std::optional<double> accuracy;
  ClassMetrics ad;      // headline row
  ClassMetrics non_ad;  // positive class swapped

  [[nodiscard]] std::optional<double> get(Metric m) const noexcept;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

ClassMetrics class_metrics(const ConfusionMatrix& cm);

/// Throws PreconditionError for an empty matrix.
MetricsReport metrics(const ConfusionMatrix& cm);

/// Splits row indices into k folds. Each class is shuffled with the seed and
/// dealt round-robin, so per-class fold sizes differ by at most one and the
/// remainder lands in the lowest-numbered folds. Each fold is sorted.
std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const Label> labels,
                                                       std::size_t k, std::uint64_t seed);

struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> stddev;  // sample standard deviation over defined folds
  std::optional<double> min;
  std::optional<double> max;
  std::size_t defined_folds = 0;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

struct CvReport {
  std::string description;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<MetricsReport> folds;
  std::array<MetricSummary, kMetricCount> summary{};
  /// Metrics of the summed per-fold confusion matrices.
  MetricsReport pooled;
  /// fnv1a64 of each fold's serialized fitted pipeline.
  std::vector<std::uint64_t> fold_fingerprints;

  [[nodiscard]] const MetricSummary& summary_of(Metric m) const noexcept {
    return summary[static_cast<std::size_t>(m)];
  }

  friend bool operator==(const CvReport&, const CvReport&) = default;
};

/// Stratified k-fold evaluation. Every transform is fitted inside the fold
/// (except a `global` RFE scope, which selects once up front). Folds may run
/// on `jobs` threads; the report does not depend on it. Training failures are
/// rethrown with the fold index prefixed.
CvReport cross_validate(const PipelineSpec& spec, const PipelineData& data, std::size_t k,
                        std::uint64_t seed, std::size_t jobs = 1);

struct TestReport {
  std::string description;
  MetricsReport metrics;
  std::vector<std::string> ids;
  std::vector<Label> truth;
  std::vector<Label> predicted;
  std::vector<double> scores;
};

/// Fits on `train` only and scores `test`. Refuses overlapping ids.
TestReport train_test_evaluate(const PipelineSpec& spec, const PipelineData& train,
                               const PipelineData& test);

}  // namespace adscreen
