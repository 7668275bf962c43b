#include "adscreen/kernel_svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adscreen/error.hpp"

namespace adscreen {

namespace {

constexpr double kTau = 1e-12;
constexpr std::size_t kFullKernelLimit = 2500;

double int_pow(double base, int exponent) {
  double result = 1.0;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Kernel rows on demand; the whole Gram matrix is cached for small problems.
class KernelRows {
 public:
  KernelRows(const Matrix& x, double gamma, double coef0, int degree)
      : x_(x), gamma_(gamma), coef0_(coef0), degree_(degree), full_(x.rows() <= kFullKernelLimit) {
    const std::size_t n = x.rows();
    diag_.resize(n);
    for (std::size_t i = 0; i < n; ++i) diag_[i] = eval(i, i);
    if (full_) {
      gram_ = Matrix(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) gram_(i, j) = gram_(j, i) = eval(i, j);
      }
    } else {
      scratch_[0].resize(n);
      scratch_[1].resize(n);
    }
  }

  [[nodiscard]] double diag(std::size_t i) const { return diag_[i]; }

  std::span<const double> row(std::size_t i, int slot) {
    if (full_) return gram_.row(i);
    auto& buf = scratch_[slot];
    for (std::size_t j = 0; j < buf.size(); ++j) buf[j] = eval(i, j);
    return buf;
  }

 private:
  [[nodiscard]] double eval(std::size_t i, std::size_t j) const {
    return int_pow(gamma_ * dot(x_.row(i), x_.row(j)) + coef0_, degree_);
  }

  const Matrix& x_;
  double gamma_;
  double coef0_;
  int degree_;
  bool full_;
  std::vector<double> diag_;
  Matrix gram_;
  std::vector<double> scratch_[2];
};

}  // namespace

double kernel_poly(std::span<const double> x, std::span<const double> y, double gamma,
                   double coef0, int degree) {
  if (x.size() != y.size()) throw PreconditionError("kernel_poly: dimension mismatch");
  if (degree < 1) throw PreconditionError("kernel_poly: degree must be at least 1");
  return int_pow(gamma * dot(x, y) + coef0, degree);
}

SvmModel train_svm(const Matrix& x, std::span<const Label> labels, const SvmConfig& config,
                   SvmTrainingReport* report) {
  const std::size_t n = x.rows();
  if (n != labels.size()) throw PreconditionError("train_svm: rows and labels differ");
  const ClassCounts counts = count_classes(labels);
  if (counts[0] == 0 || counts[1] == 0) {
    throw PreconditionError("SVM needs both classes in the training set");
  }
  if (!(config.c > 0.0)) throw PreconditionError("SVM: C must be positive");
  if (config.degree < 1) throw PreconditionError("SVM: degree must be at least 1");

  SvmModel model;
  model.config = config;
  if (model.config.gamma == 0.0) {
    model.config.gamma = x.cols() > 0 ? 1.0 / static_cast<double>(x.cols()) : 1.0;
  }
  model.n_features = x.cols();
  const double c = config.c;

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = labels[i] == Label::ad ? 1.0 : -1.0;

  KernelRows kernel(x, model.config.gamma, model.config.coef0, model.config.degree);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // gradient of 0.5 a'Qa - e'a

  auto is_upper = [&](std::size_t t) { return alpha[t] >= c; };
  auto is_lower = [&](std::size_t t) { return alpha[t] <= 0.0; };
  auto in_up = [&](std::size_t t) { return y[t] > 0 ? !is_upper(t) : !is_lower(t); };
  auto in_low = [&](std::size_t t) { return y[t] > 0 ? !is_lower(t) : !is_upper(t); };

  std::size_t iter = 0;
  bool converged = false;
  double violation = 0.0;
  while (iter < config.max_iterations) {
    // Second-order working set selection.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(t) && -y[t] * grad[t] > gmax) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    }
    double gmax2 = -std::numeric_limits<double>::infinity();
    std::size_t j = n;
    double best_obj = std::numeric_limits<double>::infinity();
    const std::span<const double> ki = i < n ? kernel.row(i, 0) : std::span<const double>{};
    for (std::size_t t = 0; t < n; ++t) {
      if (!in_low(t)) continue;
      gmax2 = std::max(gmax2, y[t] * grad[t]);
      if (i == n) continue;
      const double b = gmax + y[t] * grad[t];
      if (b <= 0.0) continue;
      double a = kernel.diag(i) + kernel.diag(t) - 2.0 * ki[t];
      if (a <= 0.0) a = kTau;
      const double obj = -(b * b) / a;
      if (obj < best_obj) {
        best_obj = obj;
        j = t;
      }
    }
    violation = gmax + gmax2;
    if (i == n || j == n || violation < config.tolerance) {
      converged = true;
      break;
    }
    ++iter;

    const std::span<const double> kj = kernel.row(j, 1);
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    const double qij = y[i] * y[j] * ki[j];
    if (y[i] != y[j]) {
      double quad = kernel.diag(i) + kernel.diag(j) + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = kernel.diag(i) + kernel.diag(j) - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y[t] * (y[i] * ki[t] * dai + y[j] * kj[t] * daj);
    }
  }

  // Offset: mean of y_t G_t over free multipliers, else midpoint of the bounds.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (is_upper(t)) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (is_lower(t)) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  double rho = 0.0;
  if (n_free > 0) {
    rho = sum_free / static_cast<double>(n_free);
  } else if (std::isfinite(ub) && std::isfinite(lb)) {
    rho = 0.5 * (ub + lb);
  } else {
    rho = std::isfinite(ub) ? ub : (std::isfinite(lb) ? lb : 0.0);
  }
  model.bias = -rho;

  std::size_t n_sv = 0;
  for (double a : alpha) n_sv += a > 0.0 ? 1 : 0;
  model.support_vectors = Matrix(n_sv, x.cols());
  model.dual_coef.reserve(n_sv);
  std::size_t k = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] <= 0.0) continue;
    const auto src = x.row(t);
    std::copy(src.begin(), src.end(), model.support_vectors.row(k++).begin());
    model.dual_coef.push_back(alpha[t] * y[t]);
  }

  if (report) {
    report->iterations = iter;
    report->converged = converged;
    report->bias_from_bounds = n_free == 0;
    report->max_violation = violation;
    report->alpha = std::move(alpha);
  }
  return model;
}

double svm_decision(const SvmModel& model, std::span<const double> row) {
  double f = model.bias;
  for (std::size_t k = 0; k < model.dual_coef.size(); ++k) {
    f += model.dual_coef[k] * kernel_poly(model.support_vectors.row(k), row, model.config.gamma,
                                          model.config.coef0, model.config.degree);
  }
  return f;
}

}  // namespace adscreen
