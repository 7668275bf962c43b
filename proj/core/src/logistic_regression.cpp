#include "adscreen/logistic_regression.hpp"

#include <algorithm>
#include <cmath>

#include "adscreen/error.hpp"

namespace adscreen {

namespace {

// Four partial sums let the compiler vectorize without reassociation flags.
double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  const std::size_t n = a.size();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    s0 += a[j] * b[j];
    s1 += a[j + 1] * b[j + 1];
    s2 += a[j + 2] * b[j + 2];
    s3 += a[j + 3] * b[j + 3];
  }
  for (; j < n; ++j) s0 += a[j] * b[j];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

template <bool WithLoss>
LossGradient loss_gradient(const Matrix& x, std::span<const Label> y, std::span<const double> weights,
                           double bias, double l2) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (weights.size() != p || y.size() != n) {
    throw PreconditionError("logreg_loss_gradient: shape mismatch");
  }
  LossGradient out;
  out.grad_weights.assign(p, 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = x.row(i);
    const double prob = sigmoid(bias + dot(weights, row));
    const bool positive = y[i] == Label::ad;
    const double target = positive ? 1.0 : 0.0;
    if constexpr (WithLoss) {
      const double clamped = std::clamp(prob, kProbabilityFloor, 1.0 - kProbabilityFloor);
      loss -= std::log(positive ? clamped : 1.0 - clamped);
    }
    const double residual = prob - target;
    out.grad_bias += residual;
    for (std::size_t j = 0; j < p; ++j) out.grad_weights[j] += residual * row[j];
  }
  const double inv_n = n == 0 ? 0.0 : 1.0 / static_cast<double>(n);
  double penalty = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    out.grad_weights[j] = out.grad_weights[j] * inv_n + l2 * weights[j];
    penalty += weights[j] * weights[j];
  }
  out.grad_bias *= inv_n;
  out.loss = loss * inv_n + 0.5 * l2 * penalty;
  return out;
}

}  // namespace

LossGradient logreg_loss_gradient(const Matrix& x, std::span<const Label> y,
                                  std::span<const double> weights, double bias, double l2) {
  return loss_gradient<true>(x, y, weights, bias, l2);
}

LogRegModel train_logreg(const Matrix& x, std::span<const Label> y, const LogRegConfig& config,
                         std::vector<double>* loss_history) {
  if (x.rows() != y.size()) throw PreconditionError("train_logreg: rows and labels differ");
  const ClassCounts counts = count_classes(y);
  if (counts[0] == 0 || counts[1] == 0) {
    throw PreconditionError("logistic regression needs both classes in the training set");
  }
  LogRegModel model;
  model.config = config;
  model.weights.assign(x.cols(), 0.0);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    // The loss is only evaluated when someone asks for its history; a diverging run
    // shows up as a non-finite gradient either way.
    const LossGradient lg = loss_history
                                ? loss_gradient<true>(x, y, model.weights, model.bias, config.l2)
                                : loss_gradient<false>(x, y, model.weights, model.bias, config.l2);
    if (loss_history) loss_history->push_back(lg.loss);
    double max_grad = std::abs(lg.grad_bias);
    for (double g : lg.grad_weights) max_grad = std::max(max_grad, std::abs(g));
    if (!std::isfinite(lg.loss) || !std::isfinite(max_grad)) {
      throw NumericalError("logistic regression diverged at epoch " + std::to_string(epoch) +
                           "; try a smaller learning rate");
    }
    if (max_grad < config.tol) break;
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
      model.weights[j] -= config.learning_rate * lg.grad_weights[j];
    }
    model.bias -= config.learning_rate * lg.grad_bias;
    ++model.epochs_run;
  }
  for (double w : model.weights) {
    if (!std::isfinite(w)) throw NumericalError("logistic regression produced non-finite weights");
  }
  return model;
}

double logreg_probability(const LogRegModel& model, std::span<const double> row) {
  return sigmoid(model.bias + dot(model.weights, row));
}

}  // namespace adscreen
