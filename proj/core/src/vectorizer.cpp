#include "adscreen/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "adscreen/error.hpp"

namespace adscreen {

TfIdfModel::TfIdfModel(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
                       std::size_t corpus_size)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)), corpus_size_(corpus_size) {
  if (terms_.size() != doc_freq_.size()) throw DataError("TF-IDF: terms and df differ in length");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i])) {
      throw DataError("TF-IDF: vocabulary must be strictly sorted");
    }
    if (doc_freq_[i] < 1 || doc_freq_[i] > corpus_size_) {
      throw DataError("TF-IDF: df of '" + terms_[i] + "' outside [1, N]");
    }
    index_.emplace(terms_[i], i);
  }
}

std::optional<std::size_t> TfIdfModel::index_of(std::string_view term) const {
  const auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double TfIdfModel::idf(std::size_t index) const {
  return std::log(static_cast<double>(corpus_size_) / static_cast<double>(doc_freq_[index]));
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> dense(dimension, 0.0);
  for (const auto& [col, w] : entries) dense[col] = w;
  return dense;
}

TfIdfModel fit_tfidf(std::span<const TokenSequence> corpus, std::size_t min_doc_freq) {
  std::map<std::string, std::size_t, std::less<>> df;
  bool any_tokens = false;
  for (const auto& doc : corpus) {
    std::set<std::string_view> unique(doc.begin(), doc.end());
    any_tokens = any_tokens || !unique.empty();
    for (std::string_view term : unique) {
      auto it = df.find(term);
      if (it == df.end()) it = df.emplace(std::string(term), 0).first;
      ++it->second;
    }
  }
  if (!any_tokens) throw DataError("TF-IDF: corpus has no tokens");

  std::vector<std::string> terms;
  std::vector<std::size_t> freqs;
  for (auto& [term, count] : df) {
    if (count < std::max<std::size_t>(min_doc_freq, 1)) continue;
    terms.push_back(term);
    freqs.push_back(count);
  }
  return TfIdfModel(std::move(terms), std::move(freqs), corpus.size());
}

SparseVector transform_tfidf(const TfIdfModel& model, const TokenSequence& doc) {
  std::map<std::size_t, std::size_t> counts;
  for (const auto& token : doc) {
    if (const auto idx = model.index_of(token)) ++counts[*idx];
  }
  SparseVector out;
  out.dimension = model.vocabulary_size();
  out.entries.reserve(counts.size());
  for (const auto& [idx, tf] : counts) {
    out.entries.emplace_back(idx, static_cast<double>(tf) * model.idf(idx));
  }
  return out;
}

FeatureTable tfidf_table(const TfIdfModel& model, std::span<const std::string> ids,
                         std::span<const TokenSequence> docs) {
  if (ids.size() != docs.size()) throw PreconditionError("tfidf_table: ids and docs differ in length");
  FeatureTable table;
  table.ids.assign(ids.begin(), ids.end());
  table.column_names = model.terms();
  table.values = Matrix(docs.size(), model.vocabulary_size());
  for (std::size_t r = 0; r < docs.size(); ++r) {
    for (const auto& [col, w] : transform_tfidf(model, docs[r]).entries) table.values(r, col) = w;
  }
  return table;
}

void write_tfidf_manifest(std::ostream& out, const TfIdfModel& model) {
  nlohmann::ordered_json j;
  j["format"] = "adscreen-tfidf";
  j["version"] = 1;
  j["tf"] = "raw_count";
  j["idf"] = "ln(N/df)";
  j["corpus_size"] = model.corpus_size();
  j["vocabulary"] = model.terms();
  j["doc_freq"] = model.doc_freq();
  out << j.dump(1) << '\n';
}

TfIdfModel read_tfidf_manifest(std::istream& in) {
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("format") != "adscreen-tfidf") throw DataError("not a TF-IDF manifest");
    return TfIdfModel(j.at("vocabulary").get<std::vector<std::string>>(),
                      j.at("doc_freq").get<std::vector<std::size_t>>(),
                      j.at("corpus_size").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed TF-IDF manifest: ") + e.what());
  }
}

FusedVector concat_features(std::span<const FeatureBlock> blocks) {
  FusedVector out;
  for (const auto& block : blocks) {
    if (block.column_names.size() != block.values.size()) {
      throw DataError("block '" + block.name + "': names and values differ in length");
    }
    if (block.expected_width && block.values.size() != *block.expected_width) {
      throw DataError("block '" + block.name + "': expected width " +
                      std::to_string(*block.expected_width) + ", got " +
                      std::to_string(block.values.size()));
    }
    for (const auto& col : block.column_names) out.column_names.push_back(block.name + "_" + col);
    out.values.insert(out.values.end(), block.values.begin(), block.values.end());
  }
  return out;
}

FeatureTable concat_tables(std::span<const TableBlock> blocks) {
  if (blocks.empty()) throw PreconditionError("concat_tables: no blocks");
  FeatureTable out;
  out.ids = blocks.front().table->ids;
  std::size_t width = 0;
  for (const auto& block : blocks) {
    if (block.table->ids != out.ids) {
      throw DataError("block '" + block.name + "': row ids do not match the first block");
    }
    if (block.expected_width && block.table->cols() != *block.expected_width) {
      throw DataError("block '" + block.name + "': expected width " +
                      std::to_string(*block.expected_width) + ", got " +
                      std::to_string(block.table->cols()));
    }
    for (const auto& col : block.table->column_names) out.column_names.push_back(block.name + "_" + col);
    width += block.table->cols();
  }
  out.values = Matrix(out.ids.size(), width);
  for (std::size_t r = 0; r < out.ids.size(); ++r) {
    auto dst = out.values.row(r).begin();
    for (const auto& block : blocks) {
      const auto src = block.table->values.row(r);
      dst = std::copy(src.begin(), src.end(), dst);
    }
  }
  return out;
}

Imputer Imputer::fit(const Matrix& train) {
  std::vector<double> fill(train.cols(), 0.0);
  for (std::size_t c = 0; c < train.cols(); ++c) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const double v = train(r, c);
      if (std::isnan(v)) continue;
      sum += v;
      ++n;
    }
    if (n > 0) fill[c] = sum / static_cast<double>(n);
  }
  return Imputer(std::move(fill));
}

Matrix Imputer::apply(const Matrix& values) const {
  if (values.cols() != fill_.size()) throw DataError("imputer: column count mismatch");
  Matrix out = values;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      if (std::isnan(out(r, c))) out(r, c) = fill_[c];
    }
  }
  return out;
}

Standardizer Standardizer::fit(const Matrix& train) {
  if (train.rows() < 2) throw PreconditionError("standardizer needs at least 2 training rows");
  const auto n = static_cast<double>(train.rows());
  std::vector<double> mean(train.cols(), 0.0);
  std::vector<double> scale(train.cols(), 1.0);
  for (std::size_t c = 0; c < train.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) sum += train(r, c);
    mean[c] = sum / n;
    double ss = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const double d = train(r, c) - mean[c];
      ss += d * d;
    }
    const double sd = std::sqrt(ss / n);
    scale[c] = sd < kStdFloor ? 1.0 : sd;
  }
  return Standardizer(std::move(mean), std::move(scale));
}

Matrix Standardizer::apply(const Matrix& values) const {
  if (values.cols() != mean_.size()) throw DataError("standardizer: column count mismatch");
  Matrix out = values;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = (out(r, c) - mean_[c]) / scale_[c];
  }
  return out;
}

Standardizer fit_standardizer(const FeatureTable& train) { return Standardizer::fit(train.values); }

FeatureTable apply_standardizer(const Standardizer& s, const FeatureTable& table) {
  FeatureTable out;
  out.ids = table.ids;
  out.column_names = table.column_names;
  out.values = s.apply(table.values);
  return out;
}

}  // namespace adscreen
