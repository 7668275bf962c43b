#include "adscreen/feature_selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "adscreen/csv.hpp"
#include "adscreen/error.hpp"
#include "adscreen/vectorizer.hpp"

namespace adscreen {

std::optional<std::size_t> FeatureMask::rank_of(std::string_view name) const {
  for (const auto& r : ranking) {
    if (r.name == name) return r.rank;
  }
  return std::nullopt;
}

namespace {

std::vector<double> score_columns(const Matrix& x, std::span<const Label> y,
                                  const RfeOptions& options, std::size_t round) {
  const Matrix z = Standardizer::fit(x).apply(x);
  if (options.scorer == RfeScorer::logreg_weight) {
    const LogRegModel model = train_logreg(z, y, options.logreg);
    std::vector<double> scores(model.weights.size());
    for (std::size_t j = 0; j < scores.size(); ++j) scores[j] = std::abs(model.weights[j]);
    return scores;
  }
  ForestConfig forest = options.forest;
  forest.seed = derive_seed(options.seed, round);
  return forest_importances(train_forest(z, y, forest));
}

}  // namespace

FeatureMask rfe(const Dataset& train, const RfeOptions& options) {
  const FeatureTable& table = train.table;
  const std::size_t p = table.cols();
  if (options.target < 1 || options.target > p) {
    throw PreconditionError("rfe: target must lie in [1, " + std::to_string(p) + "], got " +
                            std::to_string(options.target));
  }
  if (options.step < 1) throw PreconditionError("rfe: step must be at least 1");
  if (train.rows() < 2) throw PreconditionError("rfe: needs at least two rows");

  const Matrix filled = table.has_missing() ? Imputer::fit(table.values).apply(table.values)
                                            : table.values;

  std::vector<std::size_t> alive(p);
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  std::vector<std::size_t> dropped_round(p, 0);
  std::size_t rounds = 0;
  std::size_t refits = 0;

  while (alive.size() > options.target) {
    const std::vector<double> scores =
        score_columns(filled.select_cols(alive), train.labels, options, rounds);
    ++refits;
    std::vector<std::size_t> order(alive.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Weakest first; equal scores put the higher original index first.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a] != scores[b]) return scores[a] < scores[b];
      return alive[a] > alive[b];
    });
    const std::size_t n_drop = std::min(options.step, alive.size() - options.target);
    ++rounds;
    std::vector<bool> drop(alive.size(), false);
    for (std::size_t k = 0; k < n_drop; ++k) {
      drop[order[k]] = true;
      dropped_round[alive[order[k]]] = rounds;
    }
    std::vector<std::size_t> next;
    next.reserve(alive.size() - n_drop);
    for (std::size_t k = 0; k < alive.size(); ++k) {
      if (!drop[k]) next.push_back(alive[k]);
    }
    alive = std::move(next);
  }

  FeatureMask mask;
  mask.refits = refits;
  mask.ranking.reserve(p);
  for (std::size_t j = 0; j < p; ++j) {
    const std::size_t r = dropped_round[j];
    mask.ranking.push_back({table.column_names[j], r == 0 ? 0 : rounds - r + 1});
  }
  for (std::size_t j : alive) mask.kept.push_back(table.column_names[j]);
  return mask;
}

FeatureTable apply_mask(const FeatureMask& mask, const FeatureTable& table) {
  std::vector<std::size_t> cols;
  cols.reserve(mask.kept.size());
  for (const auto& name : mask.kept) {
    const auto idx = table.column_index(name);
    if (!idx) throw DataError("feature mask column '" + name + "' is not in the table");
    cols.push_back(*idx);
  }
  FeatureTable out;
  out.ids = table.ids;
  out.column_names = mask.kept;
  out.values = table.values.select_cols(cols);
  return out;
}

FeatureMask identity_mask(const std::vector<std::string>& columns) {
  FeatureMask mask;
  mask.kept = columns;
  for (const auto& c : columns) mask.ranking.push_back({c, 0});
  return mask;
}

void write_mask_csv(std::ostream& out, const FeatureMask& mask) {
  out << "feature,rank\n";
  for (const auto& r : mask.ranking) out << r.name << ',' << r.rank << '\n';
}

FeatureMask read_mask_csv(const std::filesystem::path& path) {
  const CsvDocument doc = read_csv(path);
  const std::string where = path.string();
  if (doc.header != std::vector<std::string>{"feature", "rank"}) {
    throw DataError(where + ": mask header must be 'feature,rank'");
  }
  FeatureMask mask;
  for (const auto& rec : doc.records) {
    if (rec.fields.size() != 2) {
      throw DataError(where + ":" + std::to_string(rec.line) + ": expected 2 fields");
    }
    const auto rank = parse_double(rec.fields[1]);
    if (!rank || *rank < 0 || *rank != std::floor(*rank)) {
      throw DataError(where + ":" + std::to_string(rec.line) + ": bad rank '" + rec.fields[1] +
                      "'");
    }
    for (const auto& existing : mask.ranking) {
      if (existing.name == rec.fields[0]) {
        throw DataError(where + ":" + std::to_string(rec.line) + ": duplicate feature '" +
                        rec.fields[0] + "'");
      }
    }
    mask.ranking.push_back({rec.fields[0], static_cast<std::size_t>(*rank)});
    if (*rank == 0) mask.kept.push_back(rec.fields[0]);
  }
  if (mask.kept.empty()) throw DataError(where + ": mask keeps no features");
  return mask;
}

}  // namespace adscreen
