#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adscreen/label.hpp"
#include "adscreen/matrix.hpp"

namespace adscreen {

/// (gamma·<x, y> + coef0)^degree. Throws PreconditionError on a dimension mismatch.
double kernel_poly(std::span<const double> x, std::span<const double> y, double gamma,
                   double coef0, int degree = 4);

struct SvmConfig {
  double c = 1.0;
  int degree = 4;
  /// 0 selects 1/p at training time.
  double gamma = 0.0;
  double coef0 = 1.0;
  /// Stop once the maximal KKT violation falls below this.
  double tolerance = 1e-3;
  std::size_t max_iterations = 1'000'000;
  std::uint64_t seed = 0;

  friend bool operator==(const SvmConfig&, const SvmConfig&) = default;
};

struct SvmModel {
  SvmConfig config;  // gamma resolved
  std::size_t n_features = 0;
  Matrix support_vectors;
  std::vector<double> dual_coef;  // alpha_i * y_i
  double bias = 0.0;

  friend bool operator==(const SvmModel&, const SvmModel&) = default;
};

struct SvmTrainingReport {
  std::size_t iterations = 0;
  bool converged = false;
  /// No free support vector existed; the bias is the midpoint of the
  /// feasible interval implied by the bounded multipliers.
  bool bias_from_bounds = false;
  double max_violation = 0.0;
  std::vector<double> alpha;  // one multiplier per training row
};

/// C-SVM dual solved by SMO with second-order working-set selection.
/// Labels map to ad = +1, cn = -1.
SvmModel train_svm(const Matrix& x, std::span<const Label> y, const SvmConfig& config,
                   SvmTrainingReport* report = nullptr);

/// sum_i alpha_i y_i K(sv_i, row) + b.
double svm_decision(const SvmModel& model, std::span<const double> row);

}  // namespace adscreen
