#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adscreen/corpus_io.hpp"
#include "adscreen/text_analysis.hpp"

namespace adscreen {

/// Word-frequency summary of a text.
struct LexicalCounts {
  std::size_t total_words = 0;     // N
  std::size_t distinct_words = 0;  // V
  std::size_t hapax = 0;           // v1, words occurring exactly once
  std::map<std::string, std::size_t, std::less<>> freq;
};

LexicalCounts lexical_counts(const TokenSequence& seq);

inline constexpr double kBrunetExponent = 0.172;
inline constexpr std::size_t kMsttrSegment = 16;
inline constexpr double kMtldThreshold = 0.72;
inline constexpr std::size_t kHddSample = 42;

/// Brunet's index W = N^(V^-a). Lower means richer vocabulary.
double brunet_index(const LexicalCounts& c, double a = kBrunetExponent);

/// Honore's statistic R = 100 ln N / (1 - v1/V). Throws MetricError(singular)
/// when every word is a hapax.
double honore_statistic(const LexicalCounts& c);

/// Shannon word entropy (bits) divided by log2 N; lies in [0, 1]. Needs N >= 2.
double standardized_entropy(const LexicalCounts& c);

/// Root type-token ratio V / sqrt(N).
double rttr(const LexicalCounts& c);

/// Plain type-token ratio V / N.
double ttr(const LexicalCounts& c);

/// Mean TTR over consecutive full segments; the trailing partial segment is dropped.
double msttr(const TokenSequence& seq, std::size_t segment_len = kMsttrSegment);

enum class MtldMode {
  /// L / n over completed factors only.
  completed_factors,
  /// Adds the partial trailing factor and averages forward and reverse passes.
  bidirectional_partial,
};

/// A factor closes at the first token where the running TTR drops to or below
/// `threshold`. Throws MetricError(undefined) when the factor count is zero.
double mtld(const TokenSequence& seq, double threshold = kMtldThreshold,
            MtldMode mode = MtldMode::completed_factors);

/// P(no success in `draws` draws without replacement from a population of
/// `pop` containing `successes` successes), accumulated in log space.
double hypergeom_pmf_zero(std::size_t pop, std::size_t successes, std::size_t draws);

/// Expected number of distinct types in a random `sample`-token draw.
/// Throws MetricError(short_text) when N < sample.
double hdd(const LexicalCounts& c, std::size_t sample = kHddSample);

struct PosFrequencies {
  double verb = 0.0;
  double noun = 0.0;
  double pronoun = 0.0;
  double adverb = 0.0;
  double adjective = 0.0;
};

PosFrequencies pos_frequencies(const TaggedSequence& tagged);

/// Column order of the linguistic feature vector.
enum class LinguisticFeature : std::size_t {
  brunet,
  honore,
  std_entropy,
  rttr,
  msttr,
  mtld,
  hdd,
  ttr,
  verb_freq,
  noun_freq,
  pronoun_freq,
  adverb_freq,
  adjective_freq,
};

inline constexpr std::size_t kLinguisticFeatureCount = 13;

inline constexpr std::array<std::string_view, kLinguisticFeatureCount> kLinguisticFeatureNames = {
    "brunet",   "honore",    "std_entropy",  "rttr",        "msttr",
    "mtld",     "hdd",       "ttr",          "verb_freq",   "noun_freq",
    "pronoun_freq", "adverb_freq", "adjective_freq"};

struct LinguisticOptions {
  double brunet_exponent = kBrunetExponent;
  std::size_t msttr_segment = kMsttrSegment;
  double mtld_threshold = kMtldThreshold;
  MtldMode mtld_mode = MtldMode::completed_factors;
  std::size_t hdd_sample = kHddSample;
};

/// One document's 13 values. Metrics that are undefined for the text are
/// nullopt, with a note explaining each.
struct LinguisticFeatures {
  std::array<std::optional<double>, kLinguisticFeatureCount> values{};
  std::vector<std::string> notes;

  [[nodiscard]] const std::optional<double>& operator[](LinguisticFeature f) const noexcept {
    return values[static_cast<std::size_t>(f)];
  }
  [[nodiscard]] bool complete() const noexcept;
};

/// Computes all 13 features from an already tagged transcript.
LinguisticFeatures linguistic_feature_vector(const TaggedSequence& tagged,
                                             const LinguisticOptions& options = {});

/// Tokenizes and tags `doc` with `lexicon`, then computes the features.
LinguisticFeatures linguistic_feature_vector(const Document& doc,
                                             const PosLexicon& lexicon = PosLexicon::builtin(),
                                             const LinguisticOptions& options = {});

/// Row-per-document table; undefined metrics become NaN missing markers.
FeatureTable linguistic_feature_table(const std::vector<std::string>& ids,
                                      const std::vector<LinguisticFeatures>& rows);

}  // namespace adscreen
