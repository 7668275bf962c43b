#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "adscreen/evaluation.hpp"

namespace adscreen {

/// Fixed decimals, or `NA` for an undefined value.
std::string format_metric(const std::optional<double>& value, int decimals);

struct CvTableRow {
  std::string classifier;  // "LR", "RF", "SVM"
  CvReport report;
};

/// Cross-validation comparison: one row per classifier, columns CV Accuracy,
/// Precision, Recall, Specificity, F1 Score (fold means, 3 decimals), followed
/// by the same layout for pooled confusion matrices.
std::string render_cv_table_text(std::string_view model_title, std::span<const CvTableRow> rows);
std::string render_cv_table_csv(std::string_view model_title, std::span<const CvTableRow> rows);

/// Every fold's metrics plus mean, std and pooled rows.
std::string render_cv_folds_csv(std::string_view model_title, std::span<const CvTableRow> rows);

struct TestTableRow {
  std::string model;  // e.g. "Model 3"
  MetricsReport metrics;
};

/// Held-out results: per model a non-AD row and an AD row with Accuracy,
/// Recall, Precision and F1 at 4 decimals.
std::string render_test_table_text(std::span<const TestTableRow> rows);
std::string render_test_table_csv(std::span<const TestTableRow> rows);

}  // namespace adscreen
