#pragma once

#include <cmath>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace augsill {

enum class BasisKind { Logistic, Rbf };

std::string_view to_string(BasisKind kind);
BasisKind basis_kind_from_string(std::string_view name);

/// Center and steepness of a scalar logistic or RBF along one measurement
/// coordinate. Steepness is strictly positive.
class ScalarBasisParams {
 public:
  ScalarBasisParams(double center, double steepness);

  double center() const noexcept { return center_; }
  double steepness() const noexcept { return steepness_; }

  friend bool operator==(const ScalarBasisParams&, const ScalarBasisParams&) = default;

 private:
  double center_;
  double steepness_;
};

/// Logistic 1/(1+e^{-x}) evaluated without overflow for any finite x.
inline double logistic(double x) noexcept {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// log of the logistic, accurate in both tails.
inline double log_logistic(double x) noexcept {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

/// Logistic value and its complement 1 - value, each computed directly so
/// that neither suffers cancellation.
struct LogisticPair {
  double value;
  double complement;
};

inline LogisticPair logistic_pair(double x) noexcept {
  return {logistic(x), logistic(-x)};
}

double eval_scalar_basis(BasisKind kind, double y, const ScalarBasisParams& p);

/// Product over measurement dimensions of one scalar basis kind.
struct ConjunctiveFunction {
  BasisKind kind = BasisKind::Logistic;
  std::vector<ScalarBasisParams> params;

  int dim() const noexcept { return static_cast<int>(params.size()); }

  static ConjunctiveFunction uniform(BasisKind kind, const Eigen::VectorXd& centers,
                                     double steepness);

  friend bool operator==(const ConjunctiveFunction&, const ConjunctiveFunction&) = default;
};

double eval_conjunctive(const ConjunctiveFunction& f, const Eigen::Ref<const Eigen::VectorXd>& y);

/// log of eval_conjunctive; finite even where the value underflows.
double log_eval_conjunctive(const ConjunctiveFunction& f,
                            const Eigen::Ref<const Eigen::VectorXd>& y);

/// Gradient of a conjunctive function with respect to y.
Eigen::VectorXd conjunctive_gradient(const ConjunctiveFunction& f,
                                     const Eigen::Ref<const Eigen::VectorXd>& y);

/// Copy with every steepness multiplied by `scale`.
ConjunctiveFunction scaled(const ConjunctiveFunction& f, double scale);

}  // namespace augsill
