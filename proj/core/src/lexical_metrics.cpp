#include "adscreen/lexical_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "adscreen/error.hpp"

namespace adscreen {

namespace {

void require_words(const LexicalCounts& c, std::size_t minimum, const char* metric) {
  if (c.total_words < minimum) {
    throw MetricError(MetricFailure::domain, std::string(metric) + " needs at least " +
                                                 std::to_string(minimum) + " word(s), got " +
                                                 std::to_string(c.total_words));
  }
}

struct MtldPass {
  double factors = 0.0;
  std::size_t completed = 0;
};

// Running TTR over the sequence in the given direction.
template <typename It>
MtldPass mtld_pass(It first, It last, double threshold, bool partial) {
  MtldPass pass;
  std::set<std::string_view> types;
  std::size_t tokens = 0;
  for (It it = first; it != last; ++it) {
    types.insert(*it);
    ++tokens;
    const double ratio = static_cast<double>(types.size()) / static_cast<double>(tokens);
    if (ratio <= threshold) {
      ++pass.completed;
      types.clear();
      tokens = 0;
    }
  }
  pass.factors = static_cast<double>(pass.completed);
  if (partial && tokens > 0) {
    const double ratio = static_cast<double>(types.size()) / static_cast<double>(tokens);
    pass.factors += (1.0 - ratio) / (1.0 - threshold);
  }
  return pass;
}

}  // namespace

LexicalCounts lexical_counts(const TokenSequence& seq) {
  LexicalCounts c;
  for (const auto& token : seq) ++c.freq[token];
  c.total_words = seq.size();
  c.distinct_words = c.freq.size();
  c.hapax = static_cast<std::size_t>(
      std::count_if(c.freq.begin(), c.freq.end(), [](const auto& kv) { return kv.second == 1; }));
  return c;
}

double brunet_index(const LexicalCounts& c, double a) {
  require_words(c, 1, "Brunet's index");
  const auto n = static_cast<double>(c.total_words);
  const auto v = static_cast<double>(c.distinct_words);
  return std::pow(n, std::pow(v, -a));
}

double honore_statistic(const LexicalCounts& c) {
  require_words(c, 1, "Honore's statistic");
  if (c.hapax == c.distinct_words) {
    throw MetricError(MetricFailure::singular,
                      "Honore's statistic is singular when every word occurs once");
  }
  const double hapax_share = static_cast<double>(c.hapax) / static_cast<double>(c.distinct_words);
  return 100.0 * std::log(static_cast<double>(c.total_words)) / (1.0 - hapax_share);
}

double standardized_entropy(const LexicalCounts& c) {
  require_words(c, 2, "standardised entropy");
  const auto n = static_cast<double>(c.total_words);
  double entropy = 0.0;
  for (const auto& [word, count] : c.freq) {
    const double p = static_cast<double>(count) / n;
    entropy -= p * std::log2(p);
  }
  // Entropy of N equiprobable words is exactly log2 N; avoid a 1 + ulp result.
  return std::clamp(entropy / std::log2(n), 0.0, 1.0);
}

double rttr(const LexicalCounts& c) {
  require_words(c, 1, "RTTR");
  return static_cast<double>(c.distinct_words) / std::sqrt(static_cast<double>(c.total_words));
}

double ttr(const LexicalCounts& c) {
  require_words(c, 1, "TTR");
  return static_cast<double>(c.distinct_words) / static_cast<double>(c.total_words);
}

double msttr(const TokenSequence& seq, std::size_t segment_len) {
  if (segment_len == 0) throw PreconditionError("MSTTR segment length must be positive");
  if (seq.size() < segment_len) {
    throw MetricError(MetricFailure::short_text,
                      "MSTTR needs at least " + std::to_string(segment_len) + " words, got " +
                          std::to_string(seq.size()));
  }
  const std::size_t segments = seq.size() / segment_len;
  double sum = 0.0;
  for (std::size_t s = 0; s < segments; ++s) {
    std::set<std::string_view> types;
    for (std::size_t i = s * segment_len; i < (s + 1) * segment_len; ++i) types.insert(seq[i]);
    sum += static_cast<double>(types.size()) / static_cast<double>(segment_len);
  }
  return sum / static_cast<double>(segments);
}

double mtld(const TokenSequence& seq, double threshold, MtldMode mode) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw PreconditionError("MTLD threshold must lie in (0, 1)");
  }
  if (seq.empty()) throw MetricError(MetricFailure::domain, "MTLD needs at least 1 word");
  const auto length = static_cast<double>(seq.size());

  if (mode == MtldMode::completed_factors) {
    const MtldPass pass = mtld_pass(seq.begin(), seq.end(), threshold, false);
    if (pass.completed == 0) {
      throw MetricError(MetricFailure::undefined,
                        "MTLD undefined: running TTR never reached the threshold");
    }
    return length / pass.factors;
  }

  const MtldPass forward = mtld_pass(seq.tokens.begin(), seq.tokens.end(), threshold, true);
  const MtldPass backward = mtld_pass(seq.tokens.rbegin(), seq.tokens.rend(), threshold, true);
  if (forward.factors <= 0.0 || backward.factors <= 0.0) {
    throw MetricError(MetricFailure::undefined, "MTLD undefined: no lexical factor in the text");
  }
  return 0.5 * (length / forward.factors + length / backward.factors);
}

double hypergeom_pmf_zero(std::size_t pop, std::size_t successes, std::size_t draws) {
  if (successes > pop || draws > pop) {
    throw PreconditionError("hypergeometric: successes and draws must not exceed population");
  }
  if (successes == 0 || draws == 0) return 1.0;
  if (draws > pop - successes) return 0.0;
  // C(pop - s, d) / C(pop, d) = prod_{i<d} (1 - s / (pop - i))
  double log_p = 0.0;
  const auto s = static_cast<double>(successes);
  for (std::size_t i = 0; i < draws; ++i) {
    log_p += std::log1p(-s / static_cast<double>(pop - i));
  }
  return std::exp(log_p);
}

double hdd(const LexicalCounts& c, std::size_t sample) {
  if (c.total_words < sample || c.total_words == 0) {
    throw MetricError(MetricFailure::short_text,
                      "HD-D needs at least " + std::to_string(sample) + " words, got " +
                          std::to_string(c.total_words));
  }
  double sum = 0.0;
  for (const auto& [word, count] : c.freq) {
    sum += 1.0 - hypergeom_pmf_zero(c.total_words, count, sample);
  }
  return sum;
}

PosFrequencies pos_frequencies(const TaggedSequence& tagged) {
  if (tagged.empty()) {
    throw MetricError(MetricFailure::domain, "POS frequencies need at least 1 word");
  }
  std::array<std::size_t, kPosTagCount> counts{};
  for (const auto& p : tagged.pairs) ++counts[static_cast<std::size_t>(p.tag)];
  const auto n = static_cast<double>(tagged.size());
  auto share = [&](PosTag t) { return static_cast<double>(counts[static_cast<std::size_t>(t)]) / n; };
  return {share(PosTag::verb), share(PosTag::noun), share(PosTag::pronoun), share(PosTag::adverb),
          share(PosTag::adjective)};
}

bool LinguisticFeatures::complete() const noexcept {
  return std::all_of(values.begin(), values.end(), [](const auto& v) { return v.has_value(); });
}

LinguisticFeatures linguistic_feature_vector(const TaggedSequence& tagged,
                                             const LinguisticOptions& options) {
  const TokenSequence seq = tagged.tokens();
  const LexicalCounts counts = lexical_counts(seq);
  LinguisticFeatures out;

  auto assign = [&](LinguisticFeature f, auto&& compute) {
    try {
      out.values[static_cast<std::size_t>(f)] = compute();
    } catch (const MetricError& e) {
      out.notes.push_back(std::string(kLinguisticFeatureNames[static_cast<std::size_t>(f)]) +
                          ": " + e.what());
    }
  };

  using F = LinguisticFeature;
  assign(F::brunet, [&] { return brunet_index(counts, options.brunet_exponent); });
  assign(F::honore, [&] { return honore_statistic(counts); });
  assign(F::std_entropy, [&] { return standardized_entropy(counts); });
  assign(F::rttr, [&] { return rttr(counts); });
  assign(F::msttr, [&] { return msttr(seq, options.msttr_segment); });
  assign(F::mtld, [&] { return mtld(seq, options.mtld_threshold, options.mtld_mode); });
  assign(F::hdd, [&] { return hdd(counts, options.hdd_sample); });
  assign(F::ttr, [&] { return ttr(counts); });

  try {
    const PosFrequencies pos = pos_frequencies(tagged);
    out.values[static_cast<std::size_t>(F::verb_freq)] = pos.verb;
    out.values[static_cast<std::size_t>(F::noun_freq)] = pos.noun;
    out.values[static_cast<std::size_t>(F::pronoun_freq)] = pos.pronoun;
    out.values[static_cast<std::size_t>(F::adverb_freq)] = pos.adverb;
    out.values[static_cast<std::size_t>(F::adjective_freq)] = pos.adjective;
  } catch (const MetricError& e) {
    out.notes.push_back(std::string("pos: ") + e.what());
  }
  return out;
}

LinguisticFeatures linguistic_feature_vector(const Document& doc, const PosLexicon& lexicon,
                                             const LinguisticOptions& options) {
  return linguistic_feature_vector(pos_tag(tokenize(doc.text), lexicon), options);
}

FeatureTable linguistic_feature_table(const std::vector<std::string>& ids,
                                      const std::vector<LinguisticFeatures>& rows) {
  if (ids.size() != rows.size()) throw PreconditionError("ids and feature rows differ in length");
  FeatureTable table;
  table.ids = ids;
  table.column_names.assign(kLinguisticFeatureNames.begin(), kLinguisticFeatureNames.end());
  table.values = Matrix(rows.size(), kLinguisticFeatureCount);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < kLinguisticFeatureCount; ++c) {
      table.values(r, c) = rows[r].values[c].value_or(std::nan(""));
    }
  }
  return table;
}

}  // namespace adscreen
