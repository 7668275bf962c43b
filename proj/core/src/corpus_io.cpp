#include "adscreen/corpus_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "adscreen/csv.hpp"
#include "adscreen/error.hpp"
#include "adscreen/random.hpp"
#include "unicode.hpp"

namespace adscreen {
namespace fs = std::filesystem;

namespace {

bool has_txt_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".txt";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read transcript " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw DataError("error reading transcript " + path.string());
  return bytes;
}

}  // namespace

const Document* DocumentSet::find(std::string_view id) const {
  const auto it = std::lower_bound(documents.begin(), documents.end(), id,
                                   [](const Document& d, std::string_view key) { return d.id < key; });
  return (it != documents.end() && it->id == id) ? &*it : nullptr;
}

DocumentSet load_transcripts(const fs::path& dir, const TranscriptOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DataError("transcript directory not found: " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && has_txt_extension(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  DocumentSet set;
  std::map<std::string, fs::path> seen;
  for (const auto& file : files) {
    const std::string raw_stem = file.stem().string();
    if (!detail::is_valid_utf8(raw_stem)) {
      throw DataError("file name is not valid UTF-8: " + file.string());
    }
    std::string id = detail::to_nfc(raw_stem);
    if (id.empty()) throw DataError("empty subject id from file " + file.string());
    if (auto [it, inserted] = seen.emplace(id, file); !inserted) {
      throw DataError("duplicate subject id '" + id + "': " + it->second.string() + " and " +
                      file.string());
    }
    std::string text = read_file(file);
    if (text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);
    if (!detail::is_valid_utf8(text)) throw DataError("invalid UTF-8 in " + file.string());
    if (trim(text).empty() && !options.allow_empty) {
      throw DataError("empty transcript " + file.string() + " (allow-empty not set)");
    }
    set.documents.push_back({std::move(id), std::move(text)});
  }
  std::sort(set.documents.begin(), set.documents.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  if (set.documents.empty()) set.warnings.push_back("no .txt transcripts in " + dir.string());
  return set;
}

LabelMap load_labels(const fs::path& csv_path) {
  const CsvDocument csv = read_csv(csv_path);
  if (csv.header != std::vector<std::string>{"id", "label"}) {
    throw DataError(csv_path.string() + ": header must be exactly 'id,label'");
  }
  LabelMap labels;
  for (const auto& rec : csv.records) {
    const std::string where = csv_path.string() + ":" + std::to_string(rec.line);
    if (rec.fields.size() != 2) throw DataError(where + ": expected 2 fields");
    const std::string& id = rec.fields[0];
    if (id.empty()) throw DataError(where + ": empty id");
    const auto label = parse_label(rec.fields[1]);
    if (!label) throw DataError(where + ": unknown label '" + rec.fields[1] + "'");
    if (!labels.emplace(id, *label).second) throw DataError(where + ": duplicate id '" + id + "'");
  }
  return labels;
}

std::optional<std::size_t> FeatureTable::column_index(std::string_view name) const {
  const auto it = std::find(column_names.begin(), column_names.end(), name);
  if (it == column_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - column_names.begin());
}

std::optional<std::size_t> FeatureTable::row_index(std::string_view id) const {
  const auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ids.begin());
}

FeatureTable FeatureTable::select_rows(std::span<const std::size_t> indices) const {
  FeatureTable out;
  out.column_names = column_names;
  out.ids.reserve(indices.size());
  for (std::size_t i : indices) out.ids.push_back(ids[i]);
  out.values = values.select_rows(indices);
  return out;
}

bool FeatureTable::has_missing() const {
  return std::any_of(values.data().begin(), values.data().end(),
                     [](double v) { return std::isnan(v); });
}

void FeatureTable::validate(bool allow_missing) const {
  if (values.rows() != ids.size()) throw DataError("feature table: row count != id count");
  if (values.cols() != column_names.size() && !ids.empty()) {
    throw DataError("feature table: column count != name count");
  }
  std::set<std::string_view> names;
  for (const auto& name : column_names) {
    if (name.empty()) throw DataError("feature table: empty column name");
    if (!names.insert(name).second) throw DataError("feature table: duplicate column '" + name + "'");
  }
  std::set<std::string_view> seen_ids;
  for (const auto& id : ids) {
    if (id.empty()) throw DataError("feature table: empty id");
    if (!seen_ids.insert(id).second) throw DataError("feature table: duplicate id '" + id + "'");
  }
  for (std::size_t r = 0; r < values.rows(); ++r) {
    for (std::size_t c = 0; c < values.cols(); ++c) {
      const double v = values(r, c);
      if (std::isnan(v) && allow_missing) continue;
      if (!std::isfinite(v)) {
        throw DataError("feature table: non-finite value at row " + ids[r] + ", column " +
                        column_names[c]);
      }
    }
  }
}

FeatureTable load_feature_table(const fs::path& csv_path, const FeatureTableOptions& options) {
  const CsvDocument csv = read_csv(csv_path);
  const std::string src = csv_path.string();
  if (csv.header.empty() || csv.header.front() != "id") {
    throw DataError(src + ": first header column must be 'id'");
  }
  FeatureTable table;
  table.column_names.assign(csv.header.begin() + 1, csv.header.end());
  if (options.expected_width && table.cols() != *options.expected_width) {
    throw DataError(src + ": expected " + std::to_string(*options.expected_width) +
                    " feature columns, found " + std::to_string(table.cols()));
  }
  table.values = Matrix(0, table.cols());
  std::vector<double> row(table.cols());
  for (const auto& rec : csv.records) {
    const std::string where = src + ":" + std::to_string(rec.line);
    if (rec.fields.size() != csv.header.size()) {
      throw DataError(where + ": expected " + std::to_string(csv.header.size()) + " fields, found " +
                      std::to_string(rec.fields.size()));
    }
    const std::string& id = rec.fields[0];
    for (std::size_t c = 0; c < table.cols(); ++c) {
      const std::string& cell = rec.fields[c + 1];
      if (options.allow_missing && cell == kMissingToken) {
        row[c] = std::nan("");
        continue;
      }
      const auto value = parse_double(cell);
      if (!value) {
        throw DataError(where + ": non-numeric cell '" + cell + "' at row " + id + ", column " +
                        table.column_names[c]);
      }
      if (!std::isfinite(*value)) {
        throw DataError(where + ": non-finite cell '" + cell + "' at row " + id + ", column " +
                        table.column_names[c]);
      }
      row[c] = *value;
    }
    table.ids.push_back(id);
    table.values.append_row(row);
  }
  try {
    table.validate(options.allow_missing);
  } catch (const DataError& e) {
    throw DataError(src + ": " + e.what());
  }
  return table;
}

void write_feature_table(std::ostream& out, const FeatureTable& table) {
  out << "id";
  for (const auto& name : table.column_names) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    out << table.ids[r];
    for (std::size_t c = 0; c < table.cols(); ++c) out << ',' << format_double(table.values(r, c));
    out << '\n';
  }
}

void write_feature_table(const fs::path& csv_path, const FeatureTable& table) {
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) throw DataError("cannot write " + csv_path.string());
  write_feature_table(out, table);
  if (!out) throw DataError("error writing " + csv_path.string());
}

Dataset Dataset::select_rows(std::span<const std::size_t> indices) const {
  Dataset out;
  out.table = table.select_rows(indices);
  out.labels.reserve(indices.size());
  if (!labels.empty()) {
    for (std::size_t i : indices) out.labels.push_back(labels[i]);
  }
  return out;
}

Alignment align_dataset(const FeatureTable& table, const LabelMap& labels, AlignMode mode) {
  Alignment result;
  std::vector<std::size_t> keep;
  std::vector<Label> kept_labels;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const auto it = labels.find(table.ids[r]);
    if (it == labels.end()) {
      if (mode == AlignMode::strict) throw DataError("no label for id '" + table.ids[r] + "'");
      result.dropped_ids.push_back(table.ids[r]);
      continue;
    }
    keep.push_back(r);
    kept_labels.push_back(it->second);
  }
  if (keep.empty()) throw DataError("feature table and label file share no ids");
  result.dataset.table = table.select_rows(keep);
  result.dataset.labels = std::move(kept_labels);
  return result;
}

namespace {

std::size_t train_share(std::size_t n, double fraction) {
  // Remainder rows go to training; both sides keep at least one row.
  auto k = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * fraction - 1e-9));
  return std::clamp<std::size_t>(k, 1, n - 1);
}

}  // namespace

SplitIndices split_indices(std::span<const Label> labels, const SplitOptions& options) {
  if (!(options.train_fraction > 0.0 && options.train_fraction < 1.0)) {
    throw PreconditionError("train fraction must lie strictly between 0 and 1");
  }
  Rng rng(options.seed);
  SplitIndices out;
  auto take = [&](std::vector<std::size_t> pool) {
    rng.shuffle(std::span(pool));
    const std::size_t n_train = train_share(pool.size(), options.train_fraction);
    out.train.insert(out.train.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.insert(out.test.end(), pool.begin() + static_cast<std::ptrdiff_t>(n_train), pool.end());
  };

  if (options.stratified) {
    for (Label cls : {Label::cn, Label::ad}) {
      std::vector<std::size_t> pool;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == cls) pool.push_back(i);
      }
      if (pool.size() < 2) {
        throw PreconditionError("class '" + std::string(label_name(cls)) +
                                "' has fewer than 2 rows; cannot split");
      }
      take(std::move(pool));
    }
  } else {
    if (labels.size() < 2) throw PreconditionError("need at least 2 rows to split");
    std::vector<std::size_t> pool(labels.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    take(std::move(pool));
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<Dataset, Dataset> split_train_test(const Dataset& dataset, const SplitOptions& options) {
  const SplitIndices idx = split_indices(dataset.labels, options);
  return {dataset.select_rows(idx.train), dataset.select_rows(idx.test)};
}

}  // namespace adscreen
