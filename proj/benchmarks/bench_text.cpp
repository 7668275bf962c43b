// Text path: tokenizing, tagging, lexical metrics and TF-IDF.

#include <benchmark/benchmark.h>

#include <random>

#include "adscreen/adscreen.hpp"

using namespace adscreen;

namespace {

// Zipf-ish word stream so repeats look like speech rather than a uniform draw.
TokenSequence zipf_tokens(std::size_t n, std::size_t vocab, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> weights(vocab);
  for (std::size_t r = 0; r < vocab; ++r) weights[r] = 1.0 / static_cast<double>(r + 1);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  TokenSequence seq;
  seq.tokens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) seq.tokens.push_back("w" + std::to_string(pick(gen)));
  return seq;
}

std::string sample_text(std::size_t words) {
  static const char* kPhrase =
      "the boy is on the stool and he is taking a cookie while his mother dries the dishes "
      "and the water is running over the sink onto the floor ";
  std::string out;
  while (out.size() < words * 5) out += kPhrase;
  return out;
}

void BM_Tokenize(benchmark::State& state) {
  const std::string text = sample_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tokenize(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Tokenize)->Arg(200)->Arg(2000);

void BM_PosTag(benchmark::State& state) {
  const TokenSequence seq = tokenize(sample_text(static_cast<std::size_t>(state.range(0))));
  const PosLexicon& lexicon = PosLexicon::builtin();
  for (auto _ : state) benchmark::DoNotOptimize(pos_tag(seq, lexicon));
}
BENCHMARK(BM_PosTag)->Arg(200)->Arg(2000);

void BM_LexicalCounts(benchmark::State& state) {
  const TokenSequence seq = zipf_tokens(static_cast<std::size_t>(state.range(0)), 400, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lexical_counts(seq));
}
BENCHMARK(BM_LexicalCounts)->Arg(200)->Arg(2000);

void BM_Hdd(benchmark::State& state) {
  const LexicalCounts c = lexical_counts(zipf_tokens(static_cast<std::size_t>(state.range(0)), 400, 2));
  for (auto _ : state) benchmark::DoNotOptimize(hdd(c));
}
BENCHMARK(BM_Hdd)->Arg(200)->Arg(2000);

void BM_Mtld(benchmark::State& state) {
  const TokenSequence seq = zipf_tokens(static_cast<std::size_t>(state.range(0)), 400, 3);
  for (auto _ : state) benchmark::DoNotOptimize(mtld(seq, kMtldThreshold, MtldMode::bidirectional_partial));
}
BENCHMARK(BM_Mtld)->Arg(200)->Arg(2000);

void BM_LinguisticVector(benchmark::State& state) {
  const TaggedSequence tagged = pos_tag(tokenize(sample_text(200)), PosLexicon::builtin());
  for (auto _ : state) benchmark::DoNotOptimize(linguistic_feature_vector(tagged));
}
BENCHMARK(BM_LinguisticVector);

void BM_FitTfidf(benchmark::State& state) {
  std::vector<TokenSequence> docs;
  for (int d = 0; d < state.range(0); ++d) docs.push_back(zipf_tokens(150, 2000, 100 + d));
  for (auto _ : state) benchmark::DoNotOptimize(fit_tfidf(docs));
}
BENCHMARK(BM_FitTfidf)->Arg(40)->Arg(400);

void BM_TransformTfidf(benchmark::State& state) {
  std::vector<TokenSequence> docs;
  for (int d = 0; d < 200; ++d) docs.push_back(zipf_tokens(150, 2000, 500 + d));
  const TfIdfModel model = fit_tfidf(docs);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(transform_tfidf(model, docs[i++ % docs.size()]));
}
BENCHMARK(BM_TransformTfidf);

}  // namespace
