#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adscreen/label.hpp"
#include "adscreen/matrix.hpp"

namespace adscreen {

struct LogRegConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 2000;
  double l2 = 1e-3;
  double tol = 1e-6;
  std::uint64_t seed = 0;

  friend bool operator==(const LogRegConfig&, const LogRegConfig&) = default;
};

struct LogRegModel {
  LogRegConfig config;
  std::vector<double> weights;
  double bias = 0.0;
  std::size_t epochs_run = 0;

  friend bool operator==(const LogRegModel&, const LogRegModel&) = default;
};

inline constexpr double kProbabilityFloor = 1e-12;

double sigmoid(double z) noexcept;

struct LossGradient {
  double loss = 0.0;
  std::vector<double> grad_weights;
  double grad_bias = 0.0;
};

/// Mean negative log-likelihood plus (l2/2)·|w|^2 (bias unpenalised), with
/// probabilities clamped to [1e-12, 1 - 1e-12] inside the logarithms.
LossGradient logreg_loss_gradient(const Matrix& x, std::span<const Label> y,
                                  std::span<const double> weights, double bias, double l2);

/// Full-batch gradient descent from zero weights. Stops after `epochs` or once
/// the gradient's max-norm falls below `tol`. Throws NumericalError if the
/// loss stops being finite. `loss_history`, when given, receives the loss at
/// the start of every epoch.
LogRegModel train_logreg(const Matrix& x, std::span<const Label> y, const LogRegConfig& config,
                         std::vector<double>* loss_history = nullptr);

/// P(ad | row).
double logreg_probability(const LogRegModel& model, std::span<const double> row);

}  // namespace adscreen
