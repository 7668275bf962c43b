#include <doctest.h>

#include <numeric>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace adscreen;
using support::TempDir;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "adscreen");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const fs::path kModel3 = support::kFixtureDir / "model3";
const fs::path kSynthetic = support::kDataDir / "synthetic";

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

/// Separable blobs written as a generic table plus labels.
void write_blobs(const TempDir& dir) {
  const Dataset d = support::as_dataset(support::blobs(60, 2.0, 5), "f");
  write_feature_table(dir.path() / "blobs.csv", d.table);
  std::string labels = "id,label\n";
  for (std::size_t i = 0; i < d.rows(); ++i) {
    labels += d.table.ids[i] + "," + std::string(label_name(d.labels[i])) + "\n";
  }
  dir.write("labels.csv", labels);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("linguistic features of three transcripts form a 3x13 table") {
  TempDir dir("cli_ling");
  const Run r = run({"features", "linguistic", "--transcripts", (kModel3 / "transcripts").string(),
                     "--out", dir.path().string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const FeatureTable t = load_feature_table(dir.path() / "linguistic.csv", {13, true});
  CHECK(t.rows() == 3);
  CHECK(t.ids == std::vector<std::string>{"A01", "B02", "C03"});
  CHECK(lines_of(support::read_file(dir.path() / "linguistic.csv"))[0] ==
        "id,brunet,honore,std_entropy,rttr,msttr,mtld,hdd,ttr,verb_freq,noun_freq,pronoun_freq,"
        "adverb_freq,adjective_freq");
  CHECK(fs::exists(dir.path() / "manifest.json"));
}

TEST_CASE("model3 features fuse 768 embedding columns with the vocabulary") {
  TempDir dir("cli_fused");
  const Run r = run({"features", "model3", "--transcripts", (kModel3 / "transcripts").string(),
                     "--embeddings", (kModel3 / "embeddings.csv").string(), "--out",
                     dir.path().string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  // A01, B02 and C03 use 7 + 4 + 9 distinct new words.
  const std::size_t vocab = 20;
  const FeatureTable t = load_feature_table(dir.path() / "fused.csv", {768 + vocab, false});
  CHECK(t.rows() == 3);
  CHECK(t.column_names.front() == "bert_e0");
  CHECK(t.column_names[767] == "bert_e767");
  CHECK(t.column_index("tfidf_stool").has_value());
  // Embedding rows are realigned to transcript order: fixture row 1 is A01.
  const FeatureTable emb = load_feature_table(kModel3 / "embeddings.csv", {768, false});
  CHECK(t.values(0, 5) == emb.values(*emb.row_index("A01"), 5));
  CHECK(fs::exists(dir.path() / "tfidf_vocabulary.json"));

  const Run tf = run({"features", "tfidf", "--transcripts", (kModel3 / "transcripts").string(),
                      "--out", dir.path().string()});
  REQUIRE(tf.code == 0);
  const FeatureTable only = load_feature_table(dir.path() / "tfidf.csv", {vocab, false});
  CHECK(only.column_names.front().rfind("tfidf_", 0) == 0);
}

TEST_CASE("an 87-column acoustic table is a data error") {
  TempDir dir("cli_87");
  const FeatureTable full = load_feature_table(kSynthetic / "acoustic.csv");
  std::vector<std::size_t> keep(87);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  FeatureTable narrow;
  narrow.ids = full.ids;
  narrow.column_names.assign(full.column_names.begin(), full.column_names.begin() + 87);
  narrow.values = full.values.select_cols(keep);
  write_feature_table(dir.path() / "narrow.csv", narrow);
  const Run r = run({"features", "model1", "--acoustic", (dir.path() / "narrow.csv").string(),
                     "--out", dir.path().string()});
  CHECK(r.code == cli::kDataError);
  CHECK(r.err.find("88") != std::string::npos);
}

TEST_CASE("train then predict reproduces separable training labels") {
  TempDir dir("cli_train");
  write_blobs(dir);
  const std::string table = (dir.path() / "blobs.csv").string();
  const std::string labels = (dir.path() / "labels.csv").string();
  const fs::path model_dir = dir.path() / "model";
  const Run t = run({"train", "--features", "table", "--table", table, "--labels", labels,
                     "--model", "logreg", "--out", model_dir.string()});
  REQUIRE_MESSAGE(t.code == 0, t.err);
  const fs::path model = model_dir / "model.txt";
  CHECK(support::read_file(model).rfind("adscreen-pipeline 1", 0) == 0);

  const fs::path pred_dir = dir.path() / "pred";
  const Run p = run({"predict", "--features", "table", "--table", table, "--model-file",
                     model.string(), "--out", pred_dir.string()});
  REQUIRE_MESSAGE(p.code == 0, p.err);
  const auto rows = lines_of(support::read_file(pred_dir / "predictions.csv"));
  REQUIRE(rows.size() == 61);
  CHECK(rows[0] == "id,predicted_label,score");
  const LabelMap truth = load_labels(labels);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto fields = split_fields(rows[i]);
    CHECK(parse_label(fields[1]) == truth.at(fields[0]));
  }

  // Reloading the same file twice gives the same predictions.
  const fs::path again = dir.path() / "pred2";
  REQUIRE(run({"predict", "--features", "table", "--table", table, "--model-file", model.string(),
               "--out", again.string()})
              .code == 0);
  CHECK(support::read_file(again / "predictions.csv") == support::read_file(pred_dir / "predictions.csv"));
}

TEST_CASE("predicting on a table without a trained column names the column") {
  TempDir dir("cli_missing");
  write_blobs(dir);
  const Run t = run({"train", "--features", "table", "--table", (dir.path() / "blobs.csv").string(),
                     "--labels", (dir.path() / "labels.csv").string(), "--out",
                     (dir.path() / "m").string()});
  REQUIRE(t.code == 0);
  std::string csv = support::read_file(dir.path() / "blobs.csv");
  csv.replace(csv.find("f1"), 2, "zz");
  dir.write("renamed.csv", csv);
  const Run p = run({"predict", "--features", "table", "--table", (dir.path() / "renamed.csv").string(),
                     "--model-file", (dir.path() / "m" / "model.txt").string(), "--out",
                     (dir.path() / "p").string()});
  CHECK(p.code == cli::kDataError);
  CHECK(p.err.find("'f1'") != std::string::npos);
}

TEST_CASE("cv reruns with the same seed write identical files") {
  TempDir dir("cli_cv");
  auto cv = [&](const std::string& sub, const std::string& model) {
    return run({"cv", "--features", "model1", "--acoustic", (kSynthetic / "acoustic.csv").string(),
                "--labels", (kSynthetic / "labels.csv").string(), "--model", model, "--k", "5",
                "--seed", "42", "--rf-trees", "25", "--out", (dir.path() / sub).string()});
  };
  const Run a = cv("a", "all");
  REQUIRE_MESSAGE(a.code == 0, a.err);
  REQUIRE(cv("b", "all").code == 0);
  for (const char* f : {"cv_table.txt", "cv_table.csv", "cv_folds.csv", "manifest.json"}) {
    CAPTURE(f);
    CHECK(support::read_file(dir.path() / "a" / f) == support::read_file(dir.path() / "b" / f));
  }
  const auto table = lines_of(support::read_file(dir.path() / "a" / "cv_table.csv"));
  CHECK(table.size() == 1 + 3 * 2);
  REQUIRE(cv("single", "svm").code == 0);
  CHECK(lines_of(support::read_file(dir.path() / "single" / "cv_table.csv")).size() == 1 + 2);

  const std::string manifest = support::read_file(dir.path() / "a" / "manifest.json");
  CHECK(manifest.find("\"seed\": 42") != std::string::npos);
  CHECK(manifest.find("fnv1a64") != std::string::npos);
  CHECK(manifest.find("\"command\": \"cv\"") != std::string::npos);
}

TEST_CASE("exit codes for usage errors") {
  CHECK(run({"cv", "--no-such-flag"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"cv", "--features", "model9"}).code == cli::kUsage);
  CHECK(run({"cv", "--features", "model1", "--k", "1"}).code == cli::kUsage);
  TempDir dir("cli_missing_input");
  CHECK(run({"cv", "--features", "model1", "--acoustic", (dir.path() / "none.csv").string(),
             "--labels", (kSynthetic / "labels.csv").string(), "--out", dir.path().string()})
            .code == cli::kDataError);
}

TEST_CASE("a flat config file supplies options and flags override it") {
  TempDir dir("cli_config");
  write_blobs(dir);
  dir.write("run.cfg", "features = table\ntable = " + (dir.path() / "blobs.csv").string() +
                           "\nlabels = " + (dir.path() / "labels.csv").string() +
                           "\nmodel = rf\nseed = 7\nrf-trees = 10\n");
  const Run r = run({"cv", "--config", (dir.path() / "run.cfg").string(), "--model", "logreg",
                     "--out", (dir.path() / "o").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const std::string manifest = support::read_file(dir.path() / "o" / "manifest.json");
  CHECK(manifest.find("\"seed\": 7") != std::string::npos);
  CHECK(manifest.find("\"model\": \"logreg\"") != std::string::npos);
}

TEST_CASE("select rfe writes a mask consumed by cv") {
  TempDir dir("cli_select");
  const Run s = run({"select", "rfe", "--features", "model1", "--acoustic",
                     (kSynthetic / "acoustic.csv").string(), "--labels",
                     (kSynthetic / "labels.csv").string(), "--target", "51", "--rfe-step", "4",
                     "--out", dir.path().string()});
  REQUIRE_MESSAGE(s.code == 0, s.err);
  const FeatureMask m = read_mask_csv(dir.path() / "mask.csv");
  CHECK(m.kept.size() == 51);
  const Run cv = run({"cv", "--features", "model1", "--acoustic", (kSynthetic / "acoustic.csv").string(),
                      "--labels", (kSynthetic / "labels.csv").string(), "--mask",
                      (dir.path() / "mask.csv").string(), "--out", (dir.path() / "cv").string()});
  CHECK_MESSAGE(cv.code == 0, cv.err);
}

TEST_CASE("evaluate renders the per-class test table") {
  TempDir dir("cli_eval");
  const Run r = run({"evaluate", "--features", "model2", "--transcripts",
                     (kSynthetic / "transcripts").string(), "--labels",
                     (kSynthetic / "labels.csv").string(), "--model", "logreg", "--out",
                     dir.path().string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto csv = lines_of(support::read_file(dir.path() / "test_table.csv"));
  REQUIRE(csv.size() == 3);
  CHECK(csv[0] == "model,class,accuracy,recall,precision,f1");
  CHECK(csv[1].rfind("Model 2,non-AD,", 0) == 0);
  CHECK(csv[2].rfind("Model 2,AD,", 0) == 0);
}

}  // TEST_SUITE
