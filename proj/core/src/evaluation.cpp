#include "adscreen/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "adscreen/error.hpp"

namespace adscreen {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) noexcept {
  tp += other.tp;
  fp += other.fp;
  tn += other.tn;
  fn += other.fn;
  return *this;
}

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted) {
  if (truth.size() != predicted.size()) {
    throw PreconditionError("confusion: " + std::to_string(truth.size()) + " truths vs " +
                            std::to_string(predicted.size()) + " predictions");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool t = truth[i] == Label::ad;
    const bool p = predicted[i] == Label::ad;
    if (t && p) ++cm.tp;
    else if (!t && p) ++cm.fp;
    else if (!t) ++cm.tn;
    else ++cm.fn;
  }
  return cm;
}

ConfusionMatrix confusion(std::span<const std::string> truth,
                          std::span<const std::string> predicted) {
  auto parse_all = [](std::span<const std::string> names) {
    std::vector<Label> out;
    out.reserve(names.size());
    for (const auto& n : names) {
      const auto label = parse_label(n);
      if (!label) throw DataError("unknown label '" + n + "'");
      out.push_back(*label);
    }
    return out;
  };
  const auto t = parse_all(truth);
  const auto p = parse_all(predicted);
  return confusion(t, p);
}

std::string_view metric_name(Metric m) noexcept {
  switch (m) {
    case Metric::accuracy: return "accuracy";
    case Metric::precision: return "precision";
    case Metric::recall: return "recall";
    case Metric::specificity: return "specificity";
    case Metric::f1: return "f1";
  }
  return "accuracy";
}

std::optional<double> MetricsReport::get(Metric m) const noexcept {
  switch (m) {
    case Metric::accuracy: return accuracy;
    case Metric::precision: return ad.precision;
    case Metric::recall: return ad.recall;
    case Metric::specificity: return ad.specificity;
    case Metric::f1: return ad.f1;
  }
  return std::nullopt;
}

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ClassMetrics class_metrics(const ConfusionMatrix& cm) {
  ClassMetrics m;
  m.precision = ratio(cm.tp, cm.tp + cm.fp);
  m.recall = ratio(cm.tp, cm.tp + cm.fn);
  m.specificity = ratio(cm.tn, cm.tn + cm.fp);
  if (m.precision && m.recall) {
    const double s = *m.precision + *m.recall;
    m.f1 = s > 0.0 ? 2.0 * *m.precision * *m.recall / s : 0.0;
  }
  return m;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw PreconditionError("metrics: empty confusion matrix");
  MetricsReport r;
  r.confusion = cm;
  r.accuracy = ratio(cm.tp + cm.tn, cm.total());
  r.ad = class_metrics(cm);
  r.non_ad = class_metrics(cm.swapped());
  return r;
}

std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const Label> labels,
                                                       std::size_t k, std::uint64_t seed) {
  if (k < 2) throw PreconditionError("k-fold needs k >= 2");
  std::vector<std::vector<std::size_t>> folds(k);
  for (const Label cls : {Label::cn, Label::ad}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    if (members.size() < k) {
      throw PreconditionError("class " + std::string(label_name(cls)) + " has " +
                              std::to_string(members.size()) + " rows, fewer than k=" +
                              std::to_string(k));
    }
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(cls)));
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t i = 0; i < members.size(); ++i) folds[i % k].push_back(members[i]);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

namespace {

[[noreturn]] void rethrow_annotated(std::exception_ptr error, std::size_t fold) {
  const std::string prefix = "fold " + std::to_string(fold) + ": ";
  try {
    std::rethrow_exception(error);
  } catch (const MetricError& e) {
    throw MetricError(e.failure(), prefix + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(prefix + e.what());
  } catch (const DataError& e) {
    throw DataError(prefix + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  }
}

MetricSummary summarize(const std::vector<MetricsReport>& folds, Metric m) {
  std::vector<double> values;
  for (const auto& f : folds) {
    if (const auto v = f.get(m)) values.push_back(*v);
  }
  MetricSummary s;
  s.defined_folds = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  s.mean = mean;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

struct FoldResult {
  MetricsReport metrics;
  std::uint64_t fingerprint = 0;
};

FoldResult run_fold(const PipelineSpec& spec, const PipelineData& data,
                    const std::vector<std::size_t>& test_rows) {
  std::vector<std::size_t> train_rows;
  train_rows.reserve(data.rows() - test_rows.size());
  std::size_t t = 0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    if (t < test_rows.size() && test_rows[t] == i) {
      ++t;
      continue;
    }
    train_rows.push_back(i);
  }
  const PipelineData train = data.select_rows(train_rows);
  const PipelineData test = data.select_rows(test_rows);
  const FittedPipeline fitted = FittedPipeline::fit(spec, train);
  const std::vector<Label> predicted = fitted.predict(test);

  std::ostringstream artifact;
  fitted.write(artifact);
  return {metrics(confusion(test.dataset.labels, predicted)), fnv1a64(artifact.str())};
}

}  // namespace

CvReport cross_validate(const PipelineSpec& spec, const PipelineData& data, std::size_t k,
                        std::uint64_t seed, std::size_t jobs) {
  const auto folds = stratified_kfold(data.dataset.labels, k, seed);

  PipelineSpec base = spec;
  if (spec.rfe && spec.rfe_scope == RfeScope::global && !spec.fixed_mask) {
    base.fixed_mask = fit_global_mask(spec, data);
    base.rfe.reset();
  }

  std::vector<FoldResult> results(k);
  std::vector<std::exception_ptr> errors(k);
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, k);
  auto work = [&](std::size_t f) {
    PipelineSpec fold_spec = base;
    fold_spec.seed = derive_seed(spec.seed, f);
    if (workers > 1) fold_spec.classifier.jobs = 1;
    try {
      results[f] = run_fold(fold_spec, data, folds[f]);
    } catch (...) {
      errors[f] = std::current_exception();
    }
  };
  if (workers == 1) {
    for (std::size_t f = 0; f < k; ++f) work(f);
  } else {
    std::mutex next_mutex;
    std::size_t next = 0;
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t f = 0;
          {
            const std::lock_guard lock(next_mutex);
            if (next >= k) return;
            f = next++;
          }
          work(f);
        }
      });
    }
  }
  for (std::size_t f = 0; f < k; ++f) {
    if (errors[f]) rethrow_annotated(errors[f], f);
  }

  CvReport report;
  report.description = spec.description;
  report.k = k;
  report.seed = seed;
  ConfusionMatrix pooled;
  for (auto& r : results) {
    pooled += r.metrics.confusion;
    report.folds.push_back(r.metrics);
    report.fold_fingerprints.push_back(r.fingerprint);
  }
  for (Metric m : kAllMetrics) report.summary[static_cast<std::size_t>(m)] = summarize(report.folds, m);
  report.pooled = metrics(pooled);
  return report;
}

TestReport train_test_evaluate(const PipelineSpec& spec, const PipelineData& train,
                               const PipelineData& test) {
  const std::set<std::string_view> train_ids(train.ids().begin(), train.ids().end());
  for (const auto& id : test.ids()) {
    if (train_ids.count(id)) {
      throw DataError("id '" + id + "' appears in both the training and the test set");
    }
  }
  const FittedPipeline fitted = FittedPipeline::fit(spec, train);
  TestReport report;
  report.description = spec.description;
  report.ids = test.ids();
  report.truth = test.dataset.labels;
  const Matrix x = fitted.transform(test);
  report.scores = fitted.model().predict_scores(x);
  report.predicted = fitted.model().predict(x);
  report.metrics = metrics(confusion(report.truth, report.predicted));
  return report;
}

}  // namespace adscreen
