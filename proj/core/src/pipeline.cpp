#include "adscreen/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "adscreen/csv.hpp"
#include "adscreen/error.hpp"
#include "model_text.hpp"

namespace adscreen {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) noexcept {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

PipelineData PipelineData::select_rows(std::span<const std::size_t> indices) const {
  PipelineData out;
  out.dataset = dataset.select_rows(indices);
  if (!tokens.empty()) {
    out.tokens.reserve(indices.size());
    for (std::size_t i : indices) out.tokens.push_back(tokens[i]);
  }
  return out;
}

namespace {

constexpr int kPipelineFormatVersion = 1;

FeatureTable fuse_blocks(const FeatureTable& base, const std::string& base_block,
                         const TfIdfModel* tfidf, const PipelineData& data) {
  if (!tfidf) return base;
  if (data.tokens.size() != data.rows()) {
    throw DataError("text pipeline needs one token sequence per row (" +
                    std::to_string(data.rows()) + " rows, " + std::to_string(data.tokens.size()) +
                    " sequences)");
  }
  const FeatureTable text = tfidf_table(*tfidf, data.ids(), data.tokens);
  std::vector<TableBlock> blocks;
  if (base.cols() > 0) blocks.push_back({base_block, &base, std::nullopt});
  blocks.push_back({"tfidf", &text, std::nullopt});
  return concat_tables(blocks);
}

Matrix impute_or_reject(const std::optional<Imputer>& imputer, const FeatureTable& table) {
  if (imputer) return imputer->apply(table.values);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.cols(); ++c) {
      if (std::isnan(table.values(r, c))) {
        throw DataError("row '" + table.ids[r] + "': missing value in column '" +
                        table.column_names[c] + "' and imputation is off");
      }
    }
  }
  return table.values;
}

ClassifierSpec seeded_classifier(const PipelineSpec& spec) {
  ClassifierSpec c = spec.classifier;
  c.logreg.seed = derive_seed(spec.seed, 1);
  c.forest.seed = derive_seed(spec.seed, 2);
  c.svm.seed = derive_seed(spec.seed, 3);
  return c;
}

RfeOptions seeded_rfe(const PipelineSpec& spec) {
  RfeOptions o = *spec.rfe;
  o.seed = derive_seed(spec.seed, 4);
  return o;
}

void write_names(std::ostream& out, std::string_view key, const std::vector<std::string>& names) {
  out << key << ' ' << names.size() << '\n';
  for (const auto& n : names) {
    if (n.empty() || n.find_first_of(" \t\r\n") != std::string::npos) {
      throw DataError("column name '" + n + "' cannot be stored in a pipeline file");
    }
    out << n << '\n';
  }
}

std::vector<std::string> read_names(detail::TokenReader& in, std::string_view key) {
  in.expect(key);
  std::vector<std::string> names(in.count());
  for (auto& n : names) n = in.word();
  return names;
}

void write_values(std::ostream& out, std::string_view key, const std::vector<double>& values) {
  out << key << ' ' << values.size();
  for (double v : values) out << ' ' << format_double(v);
  out << '\n';
}

std::vector<double> read_values(detail::TokenReader& in, std::string_view key) {
  in.expect(key);
  std::vector<double> values(in.count());
  for (double& v : values) v = in.real();
  return values;
}

bool read_flag(detail::TokenReader& in, std::string_view key) {
  in.expect(key);
  const auto v = in.count();
  if (v > 1) in.fail("expected 0 or 1 after '" + std::string(key) + "'");
  return v == 1;
}

}  // namespace

FeatureTable FittedPipeline::fuse(const PipelineData& data) const {
  const FeatureTable& input = data.dataset.table;
  std::vector<std::size_t> cols;
  cols.reserve(input_columns_.size());
  for (const auto& name : input_columns_) {
    const auto idx = input.column_index(name);
    if (!idx) throw DataError("input is missing feature column '" + name + "'");
    cols.push_back(*idx);
  }
  FeatureTable base;
  base.ids = input.ids;
  base.column_names = input_columns_;
  base.values = input.values.select_cols(cols);
  return fuse_blocks(base, base_block_, tfidf_ ? &*tfidf_ : nullptr, data);
}

FittedPipeline FittedPipeline::fit(const PipelineSpec& spec, const PipelineData& train) {
  const ClassCounts counts = count_classes(train.dataset.labels);
  if (counts[0] == 0 || counts[1] == 0) {
    throw PreconditionError("training set must contain both classes");
  }
  if (spec.base_block.empty() || spec.base_block.find_first_of(" \t\r\n") != std::string::npos) {
    throw PreconditionError("base block name must be a non-empty word");
  }

  FittedPipeline p;
  p.input_columns_ = train.dataset.table.column_names;
  p.base_block_ = spec.base_block;
  if (spec.tfidf) {
    if (train.tokens.size() != train.rows()) {
      throw DataError("text pipeline needs one token sequence per training row");
    }
    p.tfidf_ = fit_tfidf(train.tokens, spec.tfidf_min_df);
  }

  FeatureTable table = p.fuse(train);
  if (table.cols() == 0) throw DataError("pipeline input has no feature columns");
  if (spec.impute) p.imputer_ = Imputer::fit(table.values);
  table.values = impute_or_reject(p.imputer_, table);

  if (spec.fixed_mask) {
    p.mask_ = *spec.fixed_mask;
  } else if (spec.rfe) {
    p.mask_ = rfe(Dataset{table, train.dataset.labels}, seeded_rfe(spec));
  }
  if (p.mask_) table = apply_mask(*p.mask_, table);

  if (spec.standardize) {
    p.standardizer_ = Standardizer::fit(table.values);
    table.values = p.standardizer_->apply(table.values);
  }
  p.model_columns_ = table.column_names;
  p.model_ = train_classifier(seeded_classifier(spec), table.values, train.dataset.labels);
  return p;
}

Matrix FittedPipeline::transform(const PipelineData& data) const {
  FeatureTable table = fuse(data);
  table.values = impute_or_reject(imputer_, table);
  if (mask_) table = apply_mask(*mask_, table);
  if (standardizer_) table.values = standardizer_->apply(table.values);
  return std::move(table.values);
}

std::vector<double> FittedPipeline::predict_scores(const PipelineData& data) const {
  return model_.predict_scores(transform(data));
}

std::vector<Label> FittedPipeline::predict(const PipelineData& data) const {
  return model_.predict(transform(data));
}

void FittedPipeline::write(std::ostream& out) const {
  out << "adscreen-pipeline " << kPipelineFormatVersion << '\n';
  write_names(out, "input_columns", input_columns_);
  out << "base_block " << base_block_ << '\n';

  out << "tfidf " << (tfidf_ ? 1 : 0) << '\n';
  if (tfidf_) {
    out << "corpus_size " << tfidf_->corpus_size() << '\n';
    out << "vocabulary " << tfidf_->vocabulary_size() << '\n';
    for (std::size_t i = 0; i < tfidf_->vocabulary_size(); ++i) {
      out << tfidf_->terms()[i] << ' ' << tfidf_->doc_freq()[i] << '\n';
    }
  }

  out << "imputer " << (imputer_ ? 1 : 0) << '\n';
  if (imputer_) write_values(out, "fill", imputer_->fill_values());

  out << "mask " << (mask_ ? 1 : 0) << '\n';
  if (mask_) {
    write_names(out, "kept", mask_->kept);
    out << "refits " << mask_->refits << '\n';
    out << "ranking " << mask_->ranking.size() << '\n';
    for (const auto& r : mask_->ranking) out << r.name << ' ' << r.rank << '\n';
  }

  out << "standardizer " << (standardizer_ ? 1 : 0) << '\n';
  if (standardizer_) {
    write_values(out, "mean", standardizer_->mean());
    write_values(out, "scale", standardizer_->scale());
  }

  write_names(out, "model_columns", model_columns_);
  out << "model\n";
  detail::write_model_body(out, model_);
  out << "end\n";
}

FittedPipeline FittedPipeline::read(std::istream& in) {
  detail::TokenReader r(in, "pipeline file");
  r.expect("adscreen-pipeline");
  if (r.integer() != kPipelineFormatVersion) r.fail("unsupported pipeline format version");

  FittedPipeline p;
  p.input_columns_ = read_names(r, "input_columns");
  r.expect("base_block");
  p.base_block_ = r.word();

  if (read_flag(r, "tfidf")) {
    r.expect("corpus_size");
    const std::size_t n = r.count();
    r.expect("vocabulary");
    std::vector<std::string> terms(r.count());
    std::vector<std::size_t> df(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      terms[i] = r.word();
      df[i] = r.count();
    }
    p.tfidf_ = TfIdfModel(std::move(terms), std::move(df), n);
  }

  if (read_flag(r, "imputer")) p.imputer_ = Imputer(read_values(r, "fill"));

  if (read_flag(r, "mask")) {
    FeatureMask m;
    m.kept = read_names(r, "kept");
    r.expect("refits");
    m.refits = r.count();
    r.expect("ranking");
    m.ranking.resize(r.count());
    for (auto& entry : m.ranking) {
      entry.name = r.word();
      entry.rank = r.count();
    }
    p.mask_ = std::move(m);
  }

  if (read_flag(r, "standardizer")) {
    std::vector<double> mean = read_values(r, "mean");
    std::vector<double> scale = read_values(r, "scale");
    if (mean.size() != scale.size()) r.fail("standardizer mean and scale differ in length");
    p.standardizer_ = Standardizer(std::move(mean), std::move(scale));
  }

  p.model_columns_ = read_names(r, "model_columns");
  r.expect("model");
  p.model_ = detail::read_model_body(r);
  r.expect("end");
  if (p.model_.n_features() != p.model_columns_.size()) {
    r.fail("model width does not match its column list");
  }
  return p;
}

FeatureMask fit_global_mask(const PipelineSpec& spec, const PipelineData& data) {
  if (!spec.rfe) throw PreconditionError("global selection requested without RFE options");
  std::optional<TfIdfModel> tfidf;
  if (spec.tfidf) tfidf = fit_tfidf(data.tokens, spec.tfidf_min_df);
  FeatureTable table =
      fuse_blocks(data.dataset.table, spec.base_block, tfidf ? &*tfidf : nullptr, data);
  if (spec.impute) table.values = Imputer::fit(table.values).apply(table.values);
  return rfe(Dataset{table, data.dataset.labels}, seeded_rfe(spec));
}

}  // namespace adscreen
