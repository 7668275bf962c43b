// Learners, RFE and cross-validation on synthetic tables.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "adscreen/adscreen.hpp"

using namespace adscreen;

namespace {

struct Problem {
  Matrix x;
  std::vector<Label> y;
};

// The first `informative` columns carry a class shift; the rest are noise.
Problem gaussian(std::size_t n, std::size_t p, std::size_t informative, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  Problem out{Matrix(n, p), {}};
  for (std::size_t i = 0; i < n; ++i) {
    const bool ad = i % 2 == 0;
    out.y.push_back(ad ? Label::ad : Label::cn);
    for (std::size_t j = 0; j < p; ++j) out.x(i, j) = z(gen) + (j < informative && ad ? 1.0 : 0.0);
  }
  return out;
}

Dataset as_dataset(const Problem& p) {
  Dataset d;
  d.labels = p.y;
  d.table.values = p.x;
  for (std::size_t i = 0; i < p.x.rows(); ++i) d.table.ids.push_back("r" + std::to_string(i));
  for (std::size_t j = 0; j < p.x.cols(); ++j) d.table.column_names.push_back("f" + std::to_string(j));
  return d;
}

void BM_BestSplit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Problem p = gaussian(n, 10, 3, 1);
  std::vector<std::size_t> rows(n), feats(10);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::iota(feats.begin(), feats.end(), std::size_t{0});
  for (auto _ : state) benchmark::DoNotOptimize(best_split(p.x, p.y, rows, feats));
}
BENCHMARK(BM_BestSplit)->Arg(100)->Arg(1000);

void BM_TrainLogreg(benchmark::State& state) {
  const Problem p = gaussian(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(train_logreg(p.x, p.y, {}));
}
BENCHMARK(BM_TrainLogreg)->Args({100, 13})->Args({300, 50})->Args({100, 88})->Unit(benchmark::kMillisecond);

void BM_TrainForest(benchmark::State& state) {
  const Problem p = gaussian(100, 88, 10, 3);
  ForestConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(train_forest(p.x, p.y, cfg, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_TrainForest)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_TrainSvm(benchmark::State& state) {
  const Problem p = gaussian(static_cast<std::size_t>(state.range(0)), 88, 10, 4);
  for (auto _ : state) benchmark::DoNotOptimize(train_svm(p.x, p.y, SvmConfig{}));
}
BENCHMARK(BM_TrainSvm)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Rfe(benchmark::State& state) {
  const Dataset d = as_dataset(gaussian(300, 50, 5, 5));
  RfeOptions opt;
  opt.target = 5;
  opt.step = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rfe(d, opt));
}
BENCHMARK(BM_Rfe)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CrossValidate(benchmark::State& state) {
  const PipelineData data{as_dataset(gaussian(100, 88, 10, 6)), {}};
  PipelineSpec spec;
  spec.classifier.kind = static_cast<ClassifierKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cross_validate(spec, data, 5, 42, 1));
  state.SetLabel(std::string(classifier_name(spec.classifier.kind)));
}
BENCHMARK(BM_CrossValidate)
    ->Arg(static_cast<int>(ClassifierKind::logreg))
    ->Arg(static_cast<int>(ClassifierKind::random_forest))
    ->Arg(static_cast<int>(ClassifierKind::svm))
    ->Unit(benchmark::kMillisecond);

}  // namespace
