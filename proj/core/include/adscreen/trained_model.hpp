#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "adscreen/kernel_svm.hpp"
#include "adscreen/logistic_regression.hpp"
#include "adscreen/random_forest.hpp"

namespace adscreen {

enum class ClassifierKind { logreg, random_forest, svm };

/// "logreg", "rf", "svm".
std::string_view classifier_name(ClassifierKind kind) noexcept;
std::optional<ClassifierKind> parse_classifier(std::string_view name) noexcept;

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::logreg;
  LogRegConfig logreg;
  ForestConfig forest;
  SvmConfig svm;
  /// Threads for forest training; results do not depend on it.
  std::size_t jobs = 1;
};

/// Any of the three fitted classifiers behind one prediction interface.
class TrainedModel {
 public:
  using Variant = std::variant<LogRegModel, ForestModel, SvmModel>;

  TrainedModel() = default;
  explicit TrainedModel(Variant model) : model_(std::move(model)) {}

  [[nodiscard]] ClassifierKind kind() const noexcept;
  [[nodiscard]] std::size_t n_features() const noexcept;
  [[nodiscard]] const Variant& variant() const noexcept { return model_; }

  /// logreg: P(ad); rf: fraction of trees voting ad; svm: decision value.
  /// Throws DataError if the column count differs from training.
  [[nodiscard]] std::vector<double> predict_scores(const Matrix& rows) const;

  /// logreg: ad iff P > 0.5; rf: ad iff more trees vote ad; svm: ad iff f > 0.
  [[nodiscard]] std::vector<Label> predict(const Matrix& rows) const;

  friend bool operator==(const TrainedModel&, const TrainedModel&) = default;

 private:
  Variant model_;
};

/// Throws PreconditionError unless both classes are present.
TrainedModel train_classifier(const ClassifierSpec& spec, const Matrix& x,
                              std::span<const Label> y);

/// Versioned plain-text model format. Doubles are written in shortest
/// round-trip form so reading back is bit-exact.
void write_model(std::ostream& out, const TrainedModel& model);
TrainedModel read_model(std::istream& in);

inline constexpr int kModelFormatVersion = 1;

}  // namespace adscreen
