#include "adscreen/report.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "adscreen/csv.hpp"

namespace adscreen {

std::string format_metric(const std::optional<double>& value, int decimals) {
  return value ? format_fixed(*value, decimals) : std::string(kMissingToken);
}

namespace {

constexpr std::array<std::string_view, 6> kCvHeader = {
    "Class", "CV Accuracy", "Precision", "Recall", "Specificity", "F1 Score"};
constexpr int kCvDecimals = 3;
constexpr int kTestDecimals = 4;

using Row = std::vector<std::string>;

std::string render_aligned(const std::vector<Row>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (row.size() < 2) continue;  // section titles do not set widths
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
    }
    out << line << '\n';
  }
  return out.str();
}

Row cv_cells(const std::string& name, const MetricsReport& m) {
  Row row{name};
  for (Metric metric : kAllMetrics) row.push_back(format_metric(m.get(metric), kCvDecimals));
  return row;
}

Row cv_mean_cells(const CvTableRow& r) {
  Row row{r.classifier};
  for (Metric metric : kAllMetrics) {
    row.push_back(format_metric(r.report.summary_of(metric).mean, kCvDecimals));
  }
  return row;
}

}  // namespace

std::string render_cv_table_text(std::string_view model_title, std::span<const CvTableRow> rows) {
  std::vector<Row> lines;
  lines.emplace_back(kCvHeader.begin(), kCvHeader.end());
  lines.push_back({std::string(model_title) + " (fold mean)"});
  for (const auto& r : rows) lines.push_back(cv_mean_cells(r));
  lines.push_back({std::string(model_title) + " (pooled)"});
  for (const auto& r : rows) lines.push_back(cv_cells(r.classifier, r.report.pooled));
  return render_aligned(lines);
}

std::string render_cv_table_csv(std::string_view model_title, std::span<const CvTableRow> rows) {
  std::ostringstream out;
  out << "model,aggregate,class,cv_accuracy,precision,recall,specificity,f1_score\n";
  auto emit = [&](std::string_view aggregate, const Row& cells) {
    out << model_title << ',' << aggregate;
    for (const auto& c : cells) out << ',' << c;
    out << '\n';
  };
  for (const auto& r : rows) emit("mean", cv_mean_cells(r));
  for (const auto& r : rows) emit("pooled", cv_cells(r.classifier, r.report.pooled));
  return out.str();
}

std::string render_cv_folds_csv(std::string_view model_title, std::span<const CvTableRow> rows) {
  std::ostringstream out;
  out << "model,class,fold,tp,fp,tn,fn,accuracy,precision,recall,specificity,f1\n";
  auto emit_counts = [&](const ConfusionMatrix& cm) {
    out << ',' << cm.tp << ',' << cm.fp << ',' << cm.tn << ',' << cm.fn;
  };
  for (const auto& r : rows) {
    for (std::size_t f = 0; f < r.report.folds.size(); ++f) {
      const auto& m = r.report.folds[f];
      out << model_title << ',' << r.classifier << ',' << f;
      emit_counts(m.confusion);
      for (Metric metric : kAllMetrics) out << ',' << format_metric(m.get(metric), 6);
      out << '\n';
    }
    for (std::string_view stat : {"mean", "std"}) {
      out << model_title << ',' << r.classifier << ',' << stat << ",,,,";
      for (Metric metric : kAllMetrics) {
        const auto& s = r.report.summary_of(metric);
        out << ',' << format_metric(stat == "mean" ? s.mean : s.stddev, 6);
      }
      out << '\n';
    }
    out << model_title << ',' << r.classifier << ",pooled";
    emit_counts(r.report.pooled.confusion);
    for (Metric metric : kAllMetrics) out << ',' << format_metric(r.report.pooled.get(metric), 6);
    out << '\n';
  }
  return out.str();
}

namespace {

Row test_cells(const std::string& model, std::string_view cls, const std::string& accuracy,
               const ClassMetrics& m) {
  return {model,
          std::string(cls),
          accuracy,
          format_metric(m.recall, kTestDecimals),
          format_metric(m.precision, kTestDecimals),
          format_metric(m.f1, kTestDecimals)};
}

}  // namespace

std::string render_test_table_text(std::span<const TestTableRow> rows) {
  std::vector<Row> lines;
  lines.push_back({"Model", "Class", "Accuracy", "Recall", "Precision", "F1"});
  for (const auto& r : rows) {
    const std::string acc = format_metric(r.metrics.accuracy, kTestDecimals);
    lines.push_back(test_cells(r.model, "non-AD", acc, r.metrics.non_ad));
    lines.push_back(test_cells("", "AD", "", r.metrics.ad));
  }
  return render_aligned(lines);
}

std::string render_test_table_csv(std::span<const TestTableRow> rows) {
  std::ostringstream out;
  out << "model,class,accuracy,recall,precision,f1\n";
  for (const auto& r : rows) {
    const std::string acc = format_metric(r.metrics.accuracy, kTestDecimals);
    for (const auto& cells : {test_cells(r.model, "non-AD", acc, r.metrics.non_ad),
                              test_cells(r.model, "AD", acc, r.metrics.ad)}) {
      for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace adscreen
