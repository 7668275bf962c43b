#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "support.hpp"

using namespace adscreen;
using support::TempDir;

namespace {

std::size_t planted_kept(const FeatureMask& m) {
  return static_cast<std::size_t>(std::count_if(m.kept.begin(), m.kept.end(), [](const std::string& s) {
    return s.rfind("inf", 0) == 0;
  }));
}

FeatureTable three_columns() {
  FeatureTable t;
  t.ids = {"a", "b"};
  t.column_names = {"f1", "f2", "f3"};
  t.values = Matrix(2, 3);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) t.values(i, j) = static_cast<double>(10 * i + j);
  }
  return t;
}

}  // namespace

TEST_SUITE("feature_selection") {

TEST_CASE("88 acoustic columns reduce to exactly 51") {
  const FeatureTable t = load_feature_table(support::kDataDir / "synthetic" / "acoustic.csv",
                                            {kEgemapsWidth, false});
  const LabelMap labels = load_labels(support::kDataDir / "synthetic" / "labels.csv");
  const Dataset d = align_dataset(t, labels).dataset;
  RfeOptions opt;
  opt.target = 51;
  const FeatureMask m = rfe(d, opt);
  CHECK(m.kept.size() == 51);
  CHECK(m.ranking.size() == 88);
  CHECK(m.refits == 88 - 51);
  std::set<std::string> kept(m.kept.begin(), m.kept.end());
  CHECK(kept.size() == 51);
  for (const auto& name : m.kept) CHECK(t.column_index(name).has_value());
}

TEST_CASE("target equal to the column count is the identity") {
  const Dataset d = support::planted(40, 2, 3, 0.1, 1);
  RfeOptions opt;
  opt.target = 5;
  const FeatureMask m = rfe(d, opt);
  CHECK(m.kept == d.table.column_names);
  for (const auto& r : m.ranking) CHECK(r.rank == 0);
  CHECK(m.refits == 0);
  CHECK(m == identity_mask(d.table.column_names));
}

TEST_CASE("planted columns are recovered") {
  const Dataset d = support::planted(300, 5, 45, 0.5, 12);
  RfeOptions opt;
  opt.target = 5;
  opt.step = 3;
  const FeatureMask m = rfe(d, opt);
  CHECK(planted_kept(m) >= 4);
}

TEST_CASE("rankings partition the dropped columns by round") {
  const Dataset d = support::planted(80, 3, 9, 0.3, 5);
  RfeOptions opt;
  opt.target = 4;
  opt.step = 3;
  const FeatureMask m = rfe(d, opt);
  CHECK(m.kept.size() == 4);
  CHECK(m.refits == 3);  // 12 -> 9 -> 6 -> 4
  std::map<std::size_t, std::size_t> per_rank;
  for (const auto& r : m.ranking) ++per_rank[r.rank];
  CHECK(per_rank[0] == 4);
  CHECK(per_rank[1] == 2);  // last round drops only down to the target
  CHECK(per_rank[2] == 3);
  CHECK(per_rank[3] == 3);
  for (const auto& name : m.kept) CHECK(m.rank_of(name) == 0u);
}

TEST_CASE("step 1 refits once per eliminated column") {
  const Dataset d = support::planted(60, 2, 8, 0.3, 8);
  for (std::size_t target : {1u, 3u, 9u}) {
    RfeOptions opt;
    opt.target = target;
    CHECK(rfe(d, opt).refits == 10 - target);
  }
}

TEST_CASE("row order does not change the selection") {
  const Dataset d = support::planted(120, 3, 12, 0.4, 31);
  std::vector<std::size_t> order(d.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 gen(4);
  std::shuffle(order.begin(), order.end(), gen);
  RfeOptions opt;
  opt.target = 4;
  const FeatureMask a = rfe(d, opt);
  const FeatureMask b = rfe(d.select_rows(order), opt);
  CHECK(a.kept == b.kept);
}

TEST_CASE("equal scores drop the higher column index first") {
  // Two identical columns carry identical weights; the later one goes.
  Dataset d = support::planted(60, 1, 0, 0.2, 2);
  FeatureTable t;
  t.ids = d.table.ids;
  t.column_names = {"x", "x_copy"};
  t.values = Matrix(d.rows(), 2);
  for (std::size_t i = 0; i < d.rows(); ++i) t.values(i, 0) = t.values(i, 1) = d.table.values(i, 0);
  d.table = t;
  RfeOptions opt;
  opt.target = 1;
  CHECK(rfe(d, opt).kept == std::vector<std::string>{"x"});
}

TEST_CASE("retraining on the masked table gives finite weights") {
  const Dataset d = support::planted(100, 3, 10, 0.3, 9);
  RfeOptions opt;
  opt.target = 3;
  opt.scorer = RfeScorer::forest_importance;
  opt.forest.n_trees = 30;
  const FeatureMask m = rfe(d, opt);
  CHECK(m.kept.size() == 3);
  const FeatureTable masked = apply_mask(m, d.table);
  const Matrix z = Standardizer::fit(masked.values).apply(masked.values);
  const LogRegModel lr = train_logreg(z, d.labels, {});
  for (double w : lr.weights) CHECK(std::isfinite(w));
  CHECK(rfe(d, opt) == m);
}

TEST_CASE("rfe preconditions") {
  const Dataset d = support::planted(20, 1, 2, 0.1, 3);
  RfeOptions opt;
  opt.target = 0;
  CHECK_THROWS_AS((void)rfe(d, opt), PreconditionError);
  opt.target = 4;
  CHECK_THROWS_AS((void)rfe(d, opt), PreconditionError);
  opt.target = 1;
  opt.step = 0;
  CHECK_THROWS_AS((void)rfe(d, opt), PreconditionError);
}

TEST_CASE("apply_mask projects in mask order and names missing columns") {
  const FeatureTable t = three_columns();
  FeatureMask m;
  m.kept = {"f2", "f1"};
  const FeatureTable out = apply_mask(m, t);
  CHECK(out.column_names == std::vector<std::string>{"f2", "f1"});
  CHECK(out.values(1, 0) == 11.0);
  CHECK(out.values(1, 1) == 10.0);

  m.kept = {"f9"};
  try {
    (void)apply_mask(m, t);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("f9") != std::string::npos);
  }
  CHECK(apply_mask(identity_mask(t.column_names), t) == t);
}

TEST_CASE("mask CSV round-trips and is validated") {
  const Dataset d = support::planted(50, 2, 4, 0.2, 6);
  RfeOptions opt;
  opt.target = 2;
  const FeatureMask m = rfe(d, opt);
  TempDir dir("mask");
  std::ostringstream out;
  write_mask_csv(out, m);
  CHECK(out.str().rfind("feature,rank\n", 0) == 0);
  const FeatureMask back = read_mask_csv(dir.write("mask.csv", out.str()));
  CHECK(back.kept == m.kept);
  CHECK(back.ranking == m.ranking);

  CHECK_THROWS_AS((void)read_mask_csv(dir.write("a.csv", "name,rank\nx,0\n")), DataError);
  CHECK_THROWS_AS((void)read_mask_csv(dir.write("b.csv", "feature,rank\nx,zero\n")), DataError);
  CHECK_THROWS_AS((void)read_mask_csv(dir.write("c.csv", "feature,rank\nx,0\nx,1\n")), DataError);
  CHECK_THROWS_AS((void)read_mask_csv(dir.write("d.csv", "feature,rank\nx,1\n")), DataError);
}

}  // TEST_SUITE
