#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <map>
#include <sstream>
#include <thread>

#include "adscreen/adscreen.hpp"

namespace fs = std::filesystem;

namespace adscreen::cli {

namespace {

constexpr std::string_view kToolVersion = "0.3.0";

struct Options {
  // inputs
  std::string labels;
  std::string acoustic;
  std::string transcripts;
  std::string embeddings;
  std::string table;
  std::string lexicon;
  std::string pretagged;
  std::string mask;
  std::string model_file;
  std::string test_labels;
  bool lenient = false;

  // what to run
  std::string features = "acoustic";
  std::string model = "logreg";
  std::string out = "adscreen_out";
  std::size_t k = 5;
  std::uint64_t seed = 42;
  std::size_t jobs = 0;
  double train_fraction = 0.7;

  // selection
  std::size_t rfe_target = 0;
  std::size_t rfe_step = 1;
  std::string rfe_scorer = "logreg";
  std::string rfe_scope = "fold";

  // features
  std::size_t tfidf_min_df = 1;
  std::string mtld_mode = "completed";

  // learners
  double logreg_lr = 0.1;
  std::size_t logreg_epochs = 2000;
  double logreg_l2 = 1e-3;
  std::size_t rf_trees = 100;
  std::size_t rf_depth = 12;
  double svm_c = 1.0;
  int svm_degree = 4;

  // positionals
  std::string feature_kind;
  std::string select_method = "rfe";
};

std::size_t effective_jobs(std::size_t jobs) {
  if (jobs > 0) return jobs;
  return std::max<unsigned>(1, std::thread::hardware_concurrency());
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// File bytes, or for a directory every regular file's name and bytes in name order.
std::uint64_t hash_input(const fs::path& path) {
  if (!fs::is_directory(path)) return fnv1a64(slurp(path));
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(path)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::uint64_t h = fnv1a64("");
  for (const auto& f : files) {
    h = fnv1a64(f.filename().string(), h);
    h = fnv1a64(std::string_view("\0", 1), h);
    h = fnv1a64(slurp(f), h);
  }
  return h;
}

void require_path(const std::string& value, std::string_view flag) {
  if (value.empty()) throw PreconditionError(std::string(flag) + " is required for this command");
  if (!fs::exists(value)) throw DataError(std::string(flag) + ": '" + value + "' does not exist");
}

// ---------------------------------------------------------------------------
// Feature sources

enum class Source { acoustic, linguistic, bert_tfidf, table };

Source parse_source(const std::string& name) {
  if (name == "acoustic" || name == "model1" || name == "model1_acoustic") return Source::acoustic;
  if (name == "linguistic" || name == "model2" || name == "model2_linguistic") {
    return Source::linguistic;
  }
  if (name == "bert_tfidf" || name == "model3" || name == "model3_bert_tfidf") {
    return Source::bert_tfidf;
  }
  if (name == "table") return Source::table;
  throw PreconditionError("unknown feature source '" + name +
                          "' (acoustic, linguistic, bert_tfidf, table)");
}

std::string model_title(Source s) {
  switch (s) {
    case Source::acoustic: return "Model 1";
    case Source::linguistic: return "Model 2";
    case Source::bert_tfidf: return "Model 3";
    case Source::table: return "Table";
  }
  return "Table";
}

struct Inputs {
  Inputs(const Options& o, std::ostream& e) : opt(o), err(e) {}

  const Options& opt;
  std::ostream& err;
  std::map<std::string, std::string> used;  // flag -> path, for the manifest

  void note(const std::string& flag, const std::string& path) { used[flag] = path; }

  DocumentSet transcripts() {
    require_path(opt.transcripts, "--transcripts");
    note("transcripts", opt.transcripts);
    DocumentSet docs = load_transcripts(opt.transcripts);
    if (docs.size() == 0) throw DataError("no transcripts found in '" + opt.transcripts + "'");
    return docs;
  }

  FeatureTable acoustic() {
    require_path(opt.acoustic, "--acoustic");
    note("acoustic", opt.acoustic);
    return load_feature_table(opt.acoustic, {kEgemapsWidth, false});
  }

  FeatureTable embeddings() {
    require_path(opt.embeddings, "--embeddings");
    note("embeddings", opt.embeddings);
    return load_feature_table(opt.embeddings, {kEmbeddingWidth, false});
  }

  FeatureTable generic_table() {
    require_path(opt.table, "--table");
    note("table", opt.table);
    return load_feature_table(opt.table, {std::nullopt, true});
  }

  LabelMap labels() {
    require_path(opt.labels, "--labels");
    note("labels", opt.labels);
    return load_labels(opt.labels);
  }

  FeatureTable linguistic() {
    LinguisticOptions lopt;
    if (opt.mtld_mode == "bidirectional") lopt.mtld_mode = MtldMode::bidirectional_partial;
    else if (opt.mtld_mode != "completed") {
      throw PreconditionError("--mtld-mode must be 'completed' or 'bidirectional'");
    }

    std::vector<std::string> ids;
    std::vector<TaggedSequence> tagged;
    if (!opt.pretagged.empty()) {
      require_path(opt.pretagged, "--pretagged");
      note("pretagged", opt.pretagged);
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(opt.pretagged)) {
        if (e.is_regular_file() && e.path().extension() == ".tsv") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      if (files.empty()) throw DataError("no .tsv files in '" + opt.pretagged + "'");
      for (const auto& f : files) {
        ids.push_back(f.stem().string());
        tagged.push_back(load_pretagged(f));
      }
    } else {
      const DocumentSet docs = transcripts();
      std::optional<PosLexicon> custom;
      if (!opt.lexicon.empty()) {
        require_path(opt.lexicon, "--lexicon");
        note("lexicon", opt.lexicon);
        custom = PosLexicon::load(opt.lexicon);
      }
      const PosLexicon& lex = custom ? *custom : PosLexicon::builtin();
      for (const auto& d : docs.documents) {
        ids.push_back(d.id);
        tagged.push_back(pos_tag(tokenize(d.text), lex));
      }
    }

    std::vector<LinguisticFeatures> rows(ids.size());
    const std::size_t workers = std::min(effective_jobs(opt.jobs), std::max<std::size_t>(ids.size(), 1));
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < ids.size(); i += workers) {
            rows[i] = linguistic_feature_vector(tagged[i], lopt);
          }
        });
      }
    }
    return linguistic_feature_table(ids, rows);
  }
};

std::vector<TokenSequence> tokens_for(const DocumentSet& docs, const std::vector<std::string>& ids) {
  std::vector<TokenSequence> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    const Document* d = docs.find(id);
    if (!d) throw DataError("no transcript for id '" + id + "'");
    out.push_back(tokenize(d->text));
  }
  return out;
}

/// Unlabelled feature rows (and tokens for the text model).
PipelineData unlabelled_data(Source source, Inputs& in) {
  PipelineData data;
  switch (source) {
    case Source::acoustic: data.dataset.table = in.acoustic(); break;
    case Source::linguistic: data.dataset.table = in.linguistic(); break;
    case Source::table: data.dataset.table = in.generic_table(); break;
    case Source::bert_tfidf: {
      const DocumentSet docs = in.transcripts();
      data.dataset.table = in.embeddings();
      data.tokens = tokens_for(docs, data.dataset.table.ids);
      break;
    }
  }
  return data;
}

PipelineData labelled_data(Source source, Inputs& in, const LabelMap& labels) {
  PipelineData raw = unlabelled_data(source, in);
  Alignment a = align_dataset(raw.dataset.table, labels,
                              in.opt.lenient ? AlignMode::lenient : AlignMode::strict);
  PipelineData data;
  if (!raw.tokens.empty()) {
    std::map<std::string_view, std::size_t> row_of;
    for (std::size_t i = 0; i < raw.dataset.table.ids.size(); ++i) row_of[raw.dataset.table.ids[i]] = i;
    for (const auto& id : a.dataset.table.ids) data.tokens.push_back(raw.tokens[row_of.at(id)]);
  }
  data.dataset = std::move(a.dataset);
  for (const auto& id : a.dropped_ids) {
    in.err << "warning: dropped unlabelled or unmatched id '" << id << "'\n";
  }
  return data;
}

// ---------------------------------------------------------------------------
// Pipeline assembly

std::vector<ClassifierKind> parse_models(const std::string& list) {
  if (list == "all") return {ClassifierKind::logreg, ClassifierKind::random_forest, ClassifierKind::svm};
  std::vector<ClassifierKind> out;
  for (const auto& name : split_fields(list)) {
    const auto kind = parse_classifier(std::string(trim(name)));
    if (!kind) throw PreconditionError("unknown classifier '" + name + "' (logreg, rf, svm, all)");
    out.push_back(*kind);
  }
  if (out.empty()) throw PreconditionError("--model lists no classifier");
  return out;
}

std::string short_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::logreg: return "LR";
    case ClassifierKind::random_forest: return "RF";
    case ClassifierKind::svm: return "SVM";
  }
  return "LR";
}

RfeOptions rfe_options(const Options& opt) {
  RfeOptions r;
  r.target = opt.rfe_target;
  r.step = opt.rfe_step;
  if (opt.rfe_scorer == "rf") r.scorer = RfeScorer::forest_importance;
  else if (opt.rfe_scorer != "logreg") throw PreconditionError("--rfe-scorer must be logreg or rf");
  r.logreg.learning_rate = opt.logreg_lr;
  r.logreg.epochs = opt.logreg_epochs;
  r.logreg.l2 = opt.logreg_l2;
  r.seed = opt.seed;
  return r;
}

PipelineSpec pipeline_spec(const Options& opt, Source source, ClassifierKind kind) {
  PipelineSpec spec;
  spec.classifier.kind = kind;
  spec.classifier.jobs = effective_jobs(opt.jobs);
  spec.classifier.logreg.learning_rate = opt.logreg_lr;
  spec.classifier.logreg.epochs = opt.logreg_epochs;
  spec.classifier.logreg.l2 = opt.logreg_l2;
  spec.classifier.forest.n_trees = opt.rf_trees;
  spec.classifier.forest.max_depth = opt.rf_depth;
  spec.classifier.svm.c = opt.svm_c;
  spec.classifier.svm.degree = opt.svm_degree;
  spec.tfidf = source == Source::bert_tfidf;
  spec.tfidf_min_df = opt.tfidf_min_df;
  spec.base_block = "bert";
  if (!opt.mask.empty()) {
    require_path(opt.mask, "--mask");
    spec.fixed_mask = read_mask_csv(opt.mask);
  } else if (opt.rfe_target > 0) {
    spec.rfe = rfe_options(opt);
    if (opt.rfe_scope == "global") spec.rfe_scope = RfeScope::global;
    else if (opt.rfe_scope != "fold") throw PreconditionError("--rfe-scope must be fold or global");
  }
  spec.seed = opt.seed;
  std::ostringstream d;
  d << model_title(source) << ' ' << classifier_name(kind);
  if (spec.fixed_mask) d << " mask=" << spec.fixed_mask->kept.size();
  if (spec.rfe) d << " rfe=" << spec.rfe->target << '/' << opt.rfe_scope;
  spec.description = d.str();
  return spec;
}

// ---------------------------------------------------------------------------
// Output

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
}

void write_manifest(const fs::path& dir, std::string_view command, const Options& opt,
                    const Inputs& in, const std::vector<std::string>& outputs) {
  nlohmann::ordered_json j;
  j["tool"] = "adscreen";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["seed"] = opt.seed;
  nlohmann::ordered_json cfg;
  cfg["features"] = opt.features;
  cfg["model"] = opt.model;
  cfg["k"] = opt.k;
  cfg["train_fraction"] = opt.train_fraction;
  cfg["rfe_target"] = opt.rfe_target;
  cfg["rfe_step"] = opt.rfe_step;
  cfg["rfe_scorer"] = opt.rfe_scorer;
  cfg["rfe_scope"] = opt.rfe_scope;
  cfg["mask"] = opt.mask;
  cfg["tfidf_min_df"] = opt.tfidf_min_df;
  cfg["mtld_mode"] = opt.mtld_mode;
  cfg["lenient"] = opt.lenient;
  cfg["logreg_lr"] = opt.logreg_lr;
  cfg["logreg_epochs"] = opt.logreg_epochs;
  cfg["logreg_l2"] = opt.logreg_l2;
  cfg["rf_trees"] = opt.rf_trees;
  cfg["rf_depth"] = opt.rf_depth;
  cfg["svm_c"] = opt.svm_c;
  cfg["svm_degree"] = opt.svm_degree;
  if (!opt.feature_kind.empty()) cfg["feature_kind"] = opt.feature_kind;
  j["config"] = cfg;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [flag, path] : in.used) {
    inputs[flag] = {{"path", path}, {"fnv1a64", hex64(hash_input(path))}};
  }
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  write_text(dir / "manifest.json", j.dump(2) + "\n");
}

fs::path prepare_out(const Options& opt) {
  const fs::path dir = opt.out;
  fs::create_directories(dir);
  return dir;
}

std::string table_csv(const FeatureTable& t) {
  std::ostringstream ss;
  write_feature_table(ss, t);
  return ss.str();
}

// ---------------------------------------------------------------------------
// Commands

void cmd_features(const Options& opt, std::ostream& out, std::ostream& err) {
  Inputs in(opt, err);
  const std::string kind = opt.feature_kind.empty() ? opt.features : opt.feature_kind;
  std::vector<std::string> outputs;
  FeatureTable table;
  std::optional<TfIdfModel> tfidf;
  std::string name;

  const bool wants_tfidf = kind == "tfidf";
  const bool wants_fused =
      kind == "fused" || (!wants_tfidf && parse_source(kind) == Source::bert_tfidf);
  if (wants_tfidf || wants_fused) {
    const DocumentSet docs = in.transcripts();
    std::vector<std::string> ids;
    std::vector<TokenSequence> tokens;
    for (const auto& d : docs.documents) {
      ids.push_back(d.id);
      tokens.push_back(tokenize(d.text));
    }
    tfidf = fit_tfidf(tokens, opt.tfidf_min_df);
    const FeatureTable text = tfidf_table(*tfidf, ids, tokens);
    if (wants_tfidf) {
      const std::vector<TableBlock> blocks{{"tfidf", &text, std::nullopt}};
      table = concat_tables(blocks);
      name = "tfidf";
    } else {
      FeatureTable emb = in.embeddings();
      std::vector<std::size_t> order;
      for (const auto& id : ids) {
        const auto r = emb.row_index(id);
        if (!r) throw DataError("embeddings have no row for transcript '" + id + "'");
        order.push_back(*r);
      }
      if (emb.rows() != ids.size()) {
        throw DataError("embeddings have " + std::to_string(emb.rows()) + " rows but there are " +
                        std::to_string(ids.size()) + " transcripts");
      }
      emb = emb.select_rows(order);
      const std::vector<TableBlock> blocks{{"bert", &emb, kEmbeddingWidth}, {"tfidf", &text, std::nullopt}};
      table = concat_tables(blocks);
      name = "fused";
    }
  } else {
    switch (parse_source(kind)) {
      case Source::acoustic: table = in.acoustic(); name = "acoustic"; break;
      case Source::linguistic: table = in.linguistic(); name = "linguistic"; break;
      case Source::table: table = in.generic_table(); name = "table"; break;
      case Source::bert_tfidf: break;
    }
  }

  const fs::path dir = prepare_out(opt);
  write_text(dir / (name + ".csv"), table_csv(table));
  outputs.push_back(name + ".csv");
  if (tfidf) {
    std::ostringstream m;
    write_tfidf_manifest(m, *tfidf);
    write_text(dir / "tfidf_vocabulary.json", m.str());
    outputs.push_back("tfidf_vocabulary.json");
  }
  write_manifest(dir, "features", opt, in, outputs);
  out << "wrote " << (dir / (name + ".csv")).string() << " (" << table.rows() << " rows x "
      << table.cols() << " columns)\n";
}

void cmd_select(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.select_method != "rfe") throw PreconditionError("select supports only 'rfe'");
  if (opt.rfe_target == 0) throw PreconditionError("select rfe needs --target");
  Inputs in(opt, err);
  const Source source = parse_source(opt.features);
  PipelineData data = labelled_data(source, in, in.labels());
  if (data.tokens.size() > 0) throw PreconditionError("select rfe works on numeric tables only");
  const FeatureMask mask = rfe(data.dataset, rfe_options(opt));
  const fs::path dir = prepare_out(opt);
  std::ostringstream csv;
  write_mask_csv(csv, mask);
  write_text(dir / "mask.csv", csv.str());
  write_manifest(dir, "select", opt, in, {"mask.csv"});
  out << "kept " << mask.kept.size() << " of " << mask.ranking.size() << " features after "
      << mask.refits << " refits; wrote " << (dir / "mask.csv").string() << '\n';
}

void cmd_cv(const Options& opt, std::ostream& out, std::ostream& err) {
  Inputs in(opt, err);
  const Source source = parse_source(opt.features);
  const auto models = parse_models(opt.model);
  const PipelineData data = labelled_data(source, in, in.labels());
  if (!opt.mask.empty()) in.note("mask", opt.mask);

  std::vector<CvTableRow> rows;
  for (ClassifierKind kind : models) {
    const PipelineSpec spec = pipeline_spec(opt, source, kind);
    rows.push_back({short_name(kind), cross_validate(spec, data, opt.k, opt.seed, effective_jobs(opt.jobs))});
  }
  const std::string title = model_title(source);
  const fs::path dir = prepare_out(opt);
  const std::string text = render_cv_table_text(title, rows);
  write_text(dir / "cv_table.txt", text);
  write_text(dir / "cv_table.csv", render_cv_table_csv(title, rows));
  write_text(dir / "cv_folds.csv", render_cv_folds_csv(title, rows));
  write_manifest(dir, "cv", opt, in, {"cv_table.txt", "cv_table.csv", "cv_folds.csv"});
  out << text;
}

void cmd_train(const Options& opt, std::ostream& out, std::ostream& err) {
  Inputs in(opt, err);
  const Source source = parse_source(opt.features);
  const auto models = parse_models(opt.model);
  if (models.size() != 1) throw PreconditionError("train needs exactly one --model");
  const PipelineData data = labelled_data(source, in, in.labels());
  if (!opt.mask.empty()) in.note("mask", opt.mask);
  const FittedPipeline fitted = FittedPipeline::fit(pipeline_spec(opt, source, models[0]), data);
  const fs::path dir = prepare_out(opt);
  std::ostringstream artifact;
  fitted.write(artifact);
  write_text(dir / "model.txt", artifact.str());
  write_manifest(dir, "train", opt, in, {"model.txt"});
  out << "trained " << classifier_name(models[0]) << " on " << data.rows() << " rows x "
      << fitted.model_columns().size() << " features; wrote " << (dir / "model.txt").string()
      << '\n';
}

void cmd_predict(const Options& opt, std::ostream& out, std::ostream& err) {
  Inputs in(opt, err);
  require_path(opt.model_file, "--model-file");
  in.note("model_file", opt.model_file);
  std::ifstream model_in(opt.model_file, std::ios::binary);
  const FittedPipeline fitted = FittedPipeline::read(model_in);
  const Source source = parse_source(opt.features);
  const PipelineData data = unlabelled_data(source, in);
  const Matrix x = fitted.transform(data);
  const auto scores = fitted.model().predict_scores(x);
  const auto labels = fitted.model().predict(x);

  std::ostringstream csv;
  csv << "id,predicted_label,score\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    csv << data.ids()[i] << ',' << label_name(labels[i]) << ',' << format_double(scores[i]) << '\n';
  }
  const fs::path dir = prepare_out(opt);
  write_text(dir / "predictions.csv", csv.str());
  write_manifest(dir, "predict", opt, in, {"predictions.csv"});
  out << "wrote " << labels.size() << " predictions to " << (dir / "predictions.csv").string()
      << '\n';
}

void cmd_evaluate(const Options& opt, std::ostream& out, std::ostream& err) {
  Inputs in(opt, err);
  const Source source = parse_source(opt.features);
  const auto models = parse_models(opt.model);
  if (!opt.mask.empty()) in.note("mask", opt.mask);

  PipelineData train;
  PipelineData test;
  if (!opt.test_labels.empty()) {
    require_path(opt.test_labels, "--test-labels");
    in.note("test_labels", opt.test_labels);
    const LabelMap test_map = load_labels(opt.test_labels);
    const LabelMap train_map = in.labels();
    Options lenient = opt;
    lenient.lenient = true;
    Inputs lin(lenient, err);
    train = labelled_data(source, lin, train_map);
    test = labelled_data(source, lin, test_map);
    for (const auto& [k, v] : lin.used) in.note(k, v);
  } else {
    const PipelineData all = labelled_data(source, in, in.labels());
    const SplitIndices split =
        split_indices(all.dataset.labels, {opt.train_fraction, opt.seed, true});
    train = all.select_rows(split.train);
    test = all.select_rows(split.test);
  }

  std::vector<TestTableRow> rows;
  for (ClassifierKind kind : models) {
    const TestReport r = train_test_evaluate(pipeline_spec(opt, source, kind), train, test);
    std::string label = model_title(source);
    if (models.size() > 1) label += " " + short_name(kind);
    rows.push_back({label, r.metrics});
  }
  const fs::path dir = prepare_out(opt);
  const std::string text = render_test_table_text(rows);
  write_text(dir / "test_table.txt", text);
  write_text(dir / "test_table.csv", render_test_table_csv(rows));
  write_manifest(dir, "evaluate", opt, in, {"test_table.txt", "test_table.csv"});
  out << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Speech-transcript screening: features, selection, classifiers, evaluation"};
  app.set_config("--config", "", "Flat key=value file; command-line flags override it");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  app.add_option("--labels", opt.labels, "CSV with header id,label (label ad or cn)");
  app.add_option("--acoustic", opt.acoustic, "eGeMAPS CSV: id plus 88 feature columns");
  app.add_option("--transcripts", opt.transcripts, "Directory of <id>.txt transcripts");
  app.add_option("--embeddings", opt.embeddings, "Embedding CSV: id,e0..e767");
  app.add_option("--table", opt.table, "Any id-keyed numeric CSV (NA marks missing)");
  app.add_option("--lexicon", opt.lexicon, "word<TAB>tag lexicon replacing the built-in one");
  app.add_option("--pretagged", opt.pretagged, "Directory of <id>.tsv word<TAB>tag files");
  app.add_option("--mask", opt.mask, "feature,rank CSV from `select rfe`");
  app.add_option("--model-file", opt.model_file, "Pipeline file written by `train`");
  app.add_option("--test-labels", opt.test_labels, "Held-out labels for `evaluate`");
  app.add_flag("--lenient", opt.lenient, "Drop rows without labels instead of failing");
  app.add_option("--features", opt.features,
                 "acoustic | linguistic | bert_tfidf | table (or model1/model2/model3)")
      ->capture_default_str();
  app.add_option("--model", opt.model, "logreg, rf, svm, a comma list, or all")->capture_default_str();
  app.add_option("--out", opt.out, "Output directory")->capture_default_str();
  app.add_option("--k", opt.k, "Cross-validation folds")->capture_default_str()->check(CLI::Range(2, 1000));
  app.add_option("--seed", opt.seed, "Master seed")->capture_default_str();
  app.add_option("--jobs", opt.jobs, "Worker threads (0: all cores)")->capture_default_str();
  app.add_option("--train-fraction", opt.train_fraction, "Training share for `evaluate`")
      ->capture_default_str();
  app.add_option("--rfe-target,--target", opt.rfe_target, "Features kept by RFE (0: no RFE)")
      ->capture_default_str();
  app.add_option("--rfe-step", opt.rfe_step, "Features dropped per RFE round")->capture_default_str();
  app.add_option("--rfe-scorer", opt.rfe_scorer, "logreg or rf")->capture_default_str();
  app.add_option("--rfe-scope", opt.rfe_scope, "fold (nested) or global")->capture_default_str();
  app.add_option("--tfidf-min-df", opt.tfidf_min_df, "Minimum document frequency")
      ->capture_default_str();
  app.add_option("--mtld-mode", opt.mtld_mode, "completed or bidirectional")->capture_default_str();
  app.add_option("--logreg-lr", opt.logreg_lr, "Logistic regression step size")->capture_default_str();
  app.add_option("--logreg-epochs", opt.logreg_epochs, "Logistic regression epochs")
      ->capture_default_str();
  app.add_option("--logreg-l2", opt.logreg_l2, "L2 penalty")->capture_default_str();
  app.add_option("--rf-trees", opt.rf_trees, "Forest size")->capture_default_str();
  app.add_option("--rf-depth", opt.rf_depth, "Maximum tree depth")->capture_default_str();
  app.add_option("--svm-c", opt.svm_c, "SVM box constraint")->capture_default_str();
  app.add_option("--svm-degree", opt.svm_degree, "Polynomial kernel degree")->capture_default_str();

  auto* features = app.add_subcommand("features", "Write a feature table and manifest");
  features->add_option("kind", opt.feature_kind,
                       "acoustic | linguistic | tfidf | fused | table (or model ids)");
  auto* select = app.add_subcommand("select", "Feature selection (rfe)");
  select->add_option("method", opt.select_method, "Selection method")->capture_default_str();
  auto* cv = app.add_subcommand("cv", "Stratified k-fold cross-validation report");
  auto* train = app.add_subcommand("train", "Fit a pipeline and save it");
  auto* predict = app.add_subcommand("predict", "Score rows with a saved pipeline");
  auto* evaluate = app.add_subcommand("evaluate", "Held-out test-set report");
  for (auto* sub : {features, select, cv, train, predict, evaluate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*features) cmd_features(opt, out, err);
    else if (*select) cmd_select(opt, out, err);
    else if (*cv) cmd_cv(opt, out, err);
    else if (*train) cmd_train(opt, out, err);
    else if (*predict) cmd_predict(opt, out, err);
    else if (*evaluate) cmd_evaluate(opt, out, err);
    return kOk;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace adscreen::cli
