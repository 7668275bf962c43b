#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "support.hpp"

using namespace adscreen;
using support::TempDir;

namespace {

std::string numeric_header(std::size_t width, const std::string& prefix = "f") {
  std::string h = "id";
  for (std::size_t j = 0; j < width; ++j) h += "," + prefix + std::to_string(j);
  return h + "\n";
}

std::string numeric_row(const std::string& id, std::size_t width, double base = 0.5) {
  std::string r = id;
  for (std::size_t j = 0; j < width; ++j) r += "," + format_double(base + static_cast<double>(j));
  return r + "\n";
}

template <typename Fn>
std::string error_text(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("corpus_io") {

TEST_CASE("load_transcripts reads files in id order") {
  TempDir dir("transcripts");
  dir.write("S002.txt", "a girl");
  dir.write("S001.txt", "the boy");
  dir.write("notes.md", "ignored");
  const DocumentSet docs = load_transcripts(dir.path());
  REQUIRE(docs.size() == 2);
  CHECK(docs.documents[0].id == "S001");
  CHECK(docs.documents[0].text == "the boy");
  CHECK(docs.documents[1].id == "S002");
  CHECK(docs.find("S002")->text == "a girl");
  CHECK(docs.find("S003") == nullptr);
}

TEST_CASE("empty transcript directory yields a warning, not an error") {
  TempDir dir("empty");
  const DocumentSet docs = load_transcripts(dir.path());
  CHECK(docs.size() == 0);
  CHECK(docs.warnings.size() == 1);
}

TEST_CASE("stems differing only in extension case collide") {
  TempDir dir("collide");
  dir.write("S001.txt", "one");
  dir.write("S001.TXT", "two");
  const std::string msg = error_text([&] { (void)load_transcripts(dir.path()); });
  CHECK(msg.find("duplicate") != std::string::npos);
  CHECK(msg.find("S001.txt") != std::string::npos);
  CHECK(msg.find("S001.TXT") != std::string::npos);
  CHECK_THROWS_AS((void)load_transcripts(dir.path()), DataError);
}

TEST_CASE("ids are NFC-normalised and case-sensitive") {
  TempDir dir("nfc");
  dir.write("Jose\xCC\x81.txt", "decomposed");  // e + combining acute
  dir.write("jose.txt", "lower");
  const DocumentSet docs = load_transcripts(dir.path());
  REQUIRE(docs.size() == 2);
  CHECK(docs.find("Jos\xC3\xA9") != nullptr);  // precomposed
  CHECK(docs.find("jose") != nullptr);
}

TEST_CASE("invalid UTF-8 and empty text are rejected with the file name") {
  TempDir dir("bad");
  dir.write("S1.txt", std::string("ok \xFF\xFE bytes"));
  const std::string msg = error_text([&] { (void)load_transcripts(dir.path()); });
  CHECK(msg.find("S1.txt") != std::string::npos);

  TempDir blank("blank");
  blank.write("S2.txt", "  \n");
  CHECK_THROWS_AS((void)load_transcripts(blank.path()), DataError);
  TranscriptOptions allow;
  allow.allow_empty = true;
  CHECK(load_transcripts(blank.path(), allow).size() == 1);
}

TEST_CASE("a byte-order mark is stripped from transcripts") {
  TempDir dir("bom");
  dir.write("A.txt", "\xEF\xBB\xBFhello");
  CHECK(load_transcripts(dir.path()).documents[0].text == "hello");
}

TEST_CASE("load_labels validates the closed label set") {
  TempDir dir("labels");
  const auto ok = dir.write("ok.csv", "id,label\nS1,ad\nS2,cn\nS3,AD\n");
  const LabelMap labels = load_labels(ok);
  CHECK(labels.size() == 3);
  CHECK(labels.at("S1") == Label::ad);
  CHECK(labels.at("S2") == Label::cn);
  CHECK(labels.at("S3") == Label::ad);

  const auto mci = dir.write("mci.csv", "id,label\nS4,mci\n");
  CHECK(error_text([&] { (void)load_labels(mci); }).find("unknown label") != std::string::npos);
  CHECK_THROWS_AS((void)load_labels(dir.write("dup.csv", "id,label\nS1,ad\nS1,cn\n")), DataError);
  CHECK_THROWS_AS((void)load_labels(dir.write("hdr.csv", "subject,label\nS1,ad\n")), DataError);
  CHECK_THROWS_AS((void)load_labels(dir.write("none.csv", "")), DataError);
}

TEST_CASE("eGeMAPS-width table is accepted and width is enforced") {
  TempDir dir("egemaps");
  const auto p = dir.write("t.csv", numeric_header(88) + numeric_row("S1", 88) + numeric_row("S2", 88));
  const FeatureTable t = load_feature_table(p, {kEgemapsWidth, false});
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 88);
  CHECK(t.values(1, 87) == doctest::Approx(87.5));

  const auto narrow = dir.write("n.csv", numeric_header(87) + numeric_row("S1", 87));
  CHECK_THROWS_AS((void)load_feature_table(narrow, {kEgemapsWidth, false}), DataError);
}

TEST_CASE("embedding-width table is accepted") {
  TempDir dir("emb");
  const auto p = dir.write("e.csv", numeric_header(768, "e") + numeric_row("S1", 768) + numeric_row("S2", 768));
  const FeatureTable t = load_feature_table(p, {kEmbeddingWidth, false});
  CHECK(t.cols() == 768);
  CHECK(t.column_names.back() == "e767");
}

TEST_CASE("non-numeric cell error cites row id and column") {
  TempDir dir("cell");
  const auto p = dir.write("t.csv", "id,F0mean,loud\nS1,1.0,2.0\nS2,abc,3.0\n");
  const std::string msg = error_text([&] { (void)load_feature_table(p); });
  CHECK(msg.find("S2") != std::string::npos);
  CHECK(msg.find("F0mean") != std::string::npos);
}

TEST_CASE("non-finite cells are rejected; NA only where missing values are allowed") {
  TempDir dir("nonfinite");
  CHECK_THROWS_AS((void)load_feature_table(dir.write("a.csv", "id,x\nS1,nan\n")), DataError);
  CHECK_THROWS_AS((void)load_feature_table(dir.write("b.csv", "id,x\nS1,inf\n")), DataError);
  const auto na = dir.write("c.csv", "id,x,y\nS1,NA,2\n");
  CHECK_THROWS_AS((void)load_feature_table(na), DataError);
  const FeatureTable t = load_feature_table(na, {std::nullopt, true});
  CHECK(std::isnan(t.values(0, 0)));
  CHECK(t.has_missing());
}

TEST_CASE("duplicate column names and ids are rejected") {
  TempDir dir("dupcol");
  CHECK_THROWS_AS((void)load_feature_table(dir.write("a.csv", "id,x,x\nS1,1,2\n")), DataError);
  CHECK_THROWS_AS((void)load_feature_table(dir.write("b.csv", "id,x\nS1,1\nS1,2\n")), DataError);
}

TEST_CASE("feature tables round-trip bit-exactly through CSV") {
  TempDir dir("roundtrip");
  FeatureTable t;
  t.ids = {"a", "b"};
  t.column_names = {"x", "y"};
  t.values = Matrix(2, 2);
  t.values(0, 0) = 0.1;
  t.values(0, 1) = 1.0 / 3.0;
  t.values(1, 0) = -2.5e-300;
  t.values(1, 1) = 12345678.901234567;
  const auto p = dir.path() / "t.csv";
  write_feature_table(p, t);
  CHECK(load_feature_table(p) == t);
}

TEST_CASE("align_dataset strict and lenient") {
  FeatureTable t;
  t.ids = {"A", "B"};
  t.column_names = {"x"};
  t.values = Matrix(2, 1);
  t.values(1, 0) = 7;

  const LabelMap both{{"A", Label::ad}, {"B", Label::cn}};
  const Alignment a = align_dataset(t, both);
  CHECK(a.dataset.table.ids == std::vector<std::string>{"A", "B"});
  CHECK(a.dataset.labels == std::vector<Label>{Label::ad, Label::cn});

  const LabelMap only_a{{"A", Label::ad}};
  const std::string msg = error_text([&] { (void)align_dataset(t, only_a); });
  CHECK(msg.find("B") != std::string::npos);

  const Alignment lenient = align_dataset(t, only_a, AlignMode::lenient);
  CHECK(lenient.dataset.rows() == 1);
  CHECK(lenient.dataset.table.ids[0] == "A");
  CHECK(lenient.dropped_ids == std::vector<std::string>{"B"});

  const LabelMap none{{"Z", Label::ad}};
  CHECK_THROWS_AS((void)align_dataset(t, none, AlignMode::lenient), DataError);
}

TEST_CASE("align_dataset keeps table row order") {
  FeatureTable t;
  t.ids = {"C", "A", "B"};
  t.column_names = {"x"};
  t.values = Matrix(3, 1);
  const LabelMap labels{{"A", Label::ad}, {"B", Label::cn}, {"C", Label::cn}};
  CHECK(align_dataset(t, labels).dataset.table.ids == t.ids);
}

namespace {

Dataset labelled(std::size_t n_ad, std::size_t n_cn) {
  Dataset d;
  d.table.column_names = {"x"};
  d.table.values = Matrix(n_ad + n_cn, 1);
  for (std::size_t i = 0; i < n_ad + n_cn; ++i) {
    d.table.ids.push_back("s" + std::to_string(i));
    d.table.values(i, 0) = static_cast<double>(i);
    d.labels.push_back(i < n_ad ? Label::ad : Label::cn);
  }
  return d;
}

}  // namespace

TEST_CASE("stratified 70/30 split of 20+20") {
  const auto [train, test] = split_train_test(labelled(20, 20), {0.7, 7, true});
  CHECK(count_classes(train.labels) == ClassCounts{14, 14});
  CHECK(count_classes(test.labels) == ClassCounts{6, 6});
}

TEST_CASE("half split of 2+2 and fraction bounds") {
  const auto [train, test] = split_train_test(labelled(2, 2), {0.5, 1, true});
  CHECK(count_classes(train.labels) == ClassCounts{1, 1});
  CHECK(count_classes(test.labels) == ClassCounts{1, 1});
  CHECK_THROWS_AS((void)split_train_test(labelled(2, 2), {1.1, 1, true}), PreconditionError);
  CHECK_THROWS_AS((void)split_train_test(labelled(2, 2), {0.0, 1, true}), PreconditionError);
  CHECK_THROWS_AS((void)split_train_test(labelled(1, 5), {0.5, 1, true}), PreconditionError);
}

TEST_CASE("odd class counts send the remainder row to training") {
  const auto [train, test] = split_train_test(labelled(5, 4), {0.5, 3, true});
  CHECK(count_classes(train.labels) == ClassCounts{2, 3});
  CHECK(count_classes(test.labels) == ClassCounts{2, 2});
}

TEST_CASE("split properties over random sizes") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n_ad = 2 + gen() % 30;
    const std::size_t n_cn = 2 + gen() % 30;
    const double frac = 0.05 + 0.9 * static_cast<double>(gen() % 1000) / 1000.0;
    const Dataset d = labelled(n_ad, n_cn);
    const SplitOptions opt{frac, gen(), true};
    const SplitIndices s = split_indices(d.labels, opt);
    CHECK(split_indices(d.labels, opt).train == s.train);

    std::vector<std::size_t> all = s.train;
    all.insert(all.end(), s.test.begin(), s.test.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expect(d.rows());
    std::iota(expect.begin(), expect.end(), std::size_t{0});
    CHECK(all == expect);
    CHECK(std::is_sorted(s.train.begin(), s.train.end()));

    const Dataset train = d.select_rows(s.train);
    const ClassCounts c = count_classes(train.labels);
    for (std::size_t k = 0; k < 2; ++k) {
      const double n_class = static_cast<double>(k == 1 ? n_ad : n_cn);
      CHECK(std::abs(static_cast<double>(c[k]) - frac * n_class) <= 1.0 + 1e-9);
      CHECK(c[k] >= 1);
      CHECK(c[k] < static_cast<std::size_t>(n_class));
    }
  }
}

TEST_CASE("loading the same inputs twice gives identical structures") {
  const auto path = support::kDataDir / "synthetic" / "acoustic.csv";
  CHECK(load_feature_table(path, {kEgemapsWidth, false}) ==
        load_feature_table(path, {kEgemapsWidth, false}));
  const auto dir = support::kDataDir / "synthetic" / "transcripts";
  const DocumentSet a = load_transcripts(dir);
  const DocumentSet b = load_transcripts(dir);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.documents[i].id == b.documents[i].id);
    CHECK(a.documents[i].text == b.documents[i].text);
  }
}

TEST_CASE("number formatting round-trips and parsing is strict") {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(static_cast<double>(gen() >> 11), static_cast<int>(gen() % 200) - 100);
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(std::nan("")) == "NA");
  CHECK_FALSE(parse_double("1.5x").has_value());
  CHECK_FALSE(parse_double("").has_value());
  CHECK(format_fixed(0.76056, 4) == "0.7606");
}

}  // TEST_SUITE
