#include "adscreen/trained_model.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "adscreen/csv.hpp"
#include "adscreen/error.hpp"
#include "model_text.hpp"

namespace adscreen {

std::string_view classifier_name(ClassifierKind kind) noexcept {
  switch (kind) {
    case ClassifierKind::logreg: return "logreg";
    case ClassifierKind::random_forest: return "rf";
    case ClassifierKind::svm: return "svm";
  }
  return "logreg";
}

std::optional<ClassifierKind> parse_classifier(std::string_view name) noexcept {
  if (name == "logreg" || name == "lr") return ClassifierKind::logreg;
  if (name == "rf" || name == "forest") return ClassifierKind::random_forest;
  if (name == "svm") return ClassifierKind::svm;
  return std::nullopt;
}

ClassifierKind TrainedModel::kind() const noexcept {
  return static_cast<ClassifierKind>(model_.index());
}

std::size_t TrainedModel::n_features() const noexcept {
  return std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LogRegModel>) return m.weights.size();
        else return m.n_features;
      },
      model_);
}

std::vector<double> TrainedModel::predict_scores(const Matrix& rows) const {
  if (rows.rows() > 0 && rows.cols() != n_features()) {
    throw DataError("model expects " + std::to_string(n_features()) + " features, got " +
                    std::to_string(rows.cols()));
  }
  std::vector<double> scores(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto row = rows.row(r);
    scores[r] = std::visit(
        [&](const auto& m) -> double {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, LogRegModel>) return logreg_probability(m, row);
          else if constexpr (std::is_same_v<T, ForestModel>) return forest_vote_fraction(m, row);
          else return svm_decision(m, row);
        },
        model_);
  }
  return scores;
}

std::vector<Label> TrainedModel::predict(const Matrix& rows) const {
  const std::vector<double> scores = predict_scores(rows);
  const double cut = kind() == ClassifierKind::svm ? 0.0 : 0.5;
  std::vector<Label> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] > cut ? Label::ad : Label::cn;
  return out;
}

TrainedModel train_classifier(const ClassifierSpec& spec, const Matrix& x,
                              std::span<const Label> y) {
  switch (spec.kind) {
    case ClassifierKind::logreg: return TrainedModel(train_logreg(x, y, spec.logreg));
    case ClassifierKind::random_forest:
      return TrainedModel(train_forest(x, y, spec.forest, spec.jobs));
    case ClassifierKind::svm: return TrainedModel(train_svm(x, y, spec.svm));
  }
  throw PreconditionError("unknown classifier kind");
}

namespace detail {

void write_model_body(std::ostream& out, const TrainedModel& model) {
  out << "kind " << classifier_name(model.kind()) << '\n';
  out << "n_features " << model.n_features() << '\n';
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LogRegModel>) {
          const auto& c = m.config;
          out << "config learning_rate " << format_double(c.learning_rate) << " epochs " << c.epochs
              << " l2 " << format_double(c.l2) << " tol " << format_double(c.tol) << " seed "
              << c.seed << '\n';
          out << "epochs_run " << m.epochs_run << '\n';
          out << "bias " << format_double(m.bias) << '\n';
          out << "weights";
          for (double w : m.weights) out << ' ' << format_double(w);
          out << '\n';
        } else if constexpr (std::is_same_v<T, ForestModel>) {
          const auto& c = m.config;
          out << "config n_trees " << c.n_trees << " max_depth " << c.max_depth
              << " min_samples_leaf " << c.min_samples_leaf << " features_per_split "
              << c.features_per_split << " seed " << c.seed << '\n';
          for (std::size_t t = 0; t < m.trees.size(); ++t) {
            const auto& nodes = m.trees[t].nodes;
            out << "tree " << t << ' ' << nodes.size() << '\n';
            for (const auto& node : nodes) {
              out << "node " << node.feature << ' ' << format_double(node.threshold) << ' '
                  << node.left << ' ' << node.right << ' ' << node.counts[0] << ' '
                  << node.counts[1] << '\n';
            }
          }
        } else {
          const auto& c = m.config;
          out << "config c " << format_double(c.c) << " degree " << c.degree << " gamma "
              << format_double(c.gamma) << " coef0 " << format_double(c.coef0) << " tolerance "
              << format_double(c.tolerance) << " max_iterations " << c.max_iterations << " seed "
              << c.seed << '\n';
          out << "bias " << format_double(m.bias) << '\n';
          out << "support_vectors " << m.dual_coef.size() << '\n';
          for (std::size_t k = 0; k < m.dual_coef.size(); ++k) {
            out << "sv " << format_double(m.dual_coef[k]);
            for (double v : m.support_vectors.row(k)) out << ' ' << format_double(v);
            out << '\n';
          }
        }
      },
      model.variant());
}

TrainedModel read_model_body(TokenReader& in) {
  in.expect("kind");
  const std::string kind_name = in.word();
  const auto kind = parse_classifier(kind_name);
  if (!kind) in.fail("unknown model kind '" + kind_name + "'");
  in.expect("n_features");
  const std::size_t p = in.count();

  switch (*kind) {
    case ClassifierKind::logreg: {
      LogRegModel m;
      in.expect("config");
      in.expect("learning_rate");
      m.config.learning_rate = in.real();
      in.expect("epochs");
      m.config.epochs = in.count();
      in.expect("l2");
      m.config.l2 = in.real();
      in.expect("tol");
      m.config.tol = in.real();
      in.expect("seed");
      m.config.seed = in.count();
      in.expect("epochs_run");
      m.epochs_run = in.count();
      in.expect("bias");
      m.bias = in.real();
      in.expect("weights");
      m.weights.resize(p);
      for (double& w : m.weights) w = in.real();
      return TrainedModel(std::move(m));
    }
    case ClassifierKind::random_forest: {
      ForestModel m;
      m.n_features = p;
      in.expect("config");
      in.expect("n_trees");
      m.config.n_trees = in.count();
      in.expect("max_depth");
      m.config.max_depth = in.count();
      in.expect("min_samples_leaf");
      m.config.min_samples_leaf = in.count();
      in.expect("features_per_split");
      m.config.features_per_split = in.count();
      in.expect("seed");
      m.config.seed = in.count();
      m.trees.resize(m.config.n_trees);
      for (std::size_t t = 0; t < m.trees.size(); ++t) {
        in.expect("tree");
        if (in.count() != t) in.fail("trees out of order");
        const std::size_t n_nodes = in.count();
        auto& nodes = m.trees[t].nodes;
        nodes.resize(n_nodes);
        for (auto& node : nodes) {
          in.expect("node");
          node.feature = in.integer();
          node.threshold = in.real();
          node.left = static_cast<std::uint32_t>(in.count());
          node.right = static_cast<std::uint32_t>(in.count());
          node.counts[0] = in.count();
          node.counts[1] = in.count();
          const bool bad_feature =
              node.feature != TreeNode::kLeaf &&
              (node.feature < 0 || static_cast<std::size_t>(node.feature) >= p);
          const bool bad_child = !node.is_leaf() && (node.left >= n_nodes || node.right >= n_nodes);
          if (bad_feature || bad_child) in.fail("corrupt tree node");
        }
        if (nodes.empty()) in.fail("empty tree");
      }
      return TrainedModel(std::move(m));
    }
    case ClassifierKind::svm: {
      SvmModel m;
      m.n_features = p;
      in.expect("config");
      in.expect("c");
      m.config.c = in.real();
      in.expect("degree");
      m.config.degree = static_cast<int>(in.integer());
      in.expect("gamma");
      m.config.gamma = in.real();
      in.expect("coef0");
      m.config.coef0 = in.real();
      in.expect("tolerance");
      m.config.tolerance = in.real();
      in.expect("max_iterations");
      m.config.max_iterations = in.count();
      in.expect("seed");
      m.config.seed = in.count();
      in.expect("bias");
      m.bias = in.real();
      in.expect("support_vectors");
      const std::size_t n_sv = in.count();
      m.support_vectors = Matrix(n_sv, p);
      m.dual_coef.resize(n_sv);
      for (std::size_t k = 0; k < n_sv; ++k) {
        in.expect("sv");
        m.dual_coef[k] = in.real();
        for (double& v : m.support_vectors.row(k)) v = in.real();
      }
      return TrainedModel(std::move(m));
    }
  }
  in.fail("unknown model kind");
}

}  // namespace detail

void write_model(std::ostream& out, const TrainedModel& model) {
  out << "adscreen-model " << kModelFormatVersion << '\n';
  detail::write_model_body(out, model);
  out << "end\n";
}

TrainedModel read_model(std::istream& in) {
  detail::TokenReader reader(in, "model file");
  reader.expect("adscreen-model");
  if (reader.integer() != kModelFormatVersion) reader.fail("unsupported model format version");
  TrainedModel model = detail::read_model_body(reader);
  reader.expect("end");
  return model;
}

}  // namespace adscreen
