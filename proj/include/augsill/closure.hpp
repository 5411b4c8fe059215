#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "augsill/dictionary.hpp"

namespace augsill {

enum class ProductPair { LogLog, LogRbf, RbfRbf };

/// Limit of the product of two conjunctive logistics: per dimension the
/// factor with the larger center, the steeper one on ties.
ConjunctiveFunction theta_star(const ConjunctiveFunction& a, const ConjunctiveFunction& b);

/// Distance between the product of two members (steepnesses scaled by
/// alpha_scale) and its limit: Lambda(theta*) for LogLog, H for LogRbf, 0 for
/// RbfRbf. Evaluated in the log domain so it stays accurate when the terms
/// underflow. Throws HypothesisError when y sits on a center.
double product_error(ProductPair pair, const Eigen::Ref<const Eigen::VectorXd>& y,
                     const ConjunctiveFunction& theta_l, const ConjunctiveFunction& theta_other,
                     double alpha_scale, HCaseSplit rule = HCaseSplit::Orthant);

/// Natural log of product_error, exact where the error itself underflows.
double log_product_error(ProductPair pair, const Eigen::Ref<const Eigen::VectorXd>& y,
                         const ConjunctiveFunction& theta_l, const ConjunctiveFunction& theta_other,
                         double alpha_scale, HCaseSplit rule = HCaseSplit::Orthant);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline constexpr double kErrorFloor = 1e-30;

/// Least-squares line through (alpha, ln max(error, 1e-30)).
RateFit convergence_rate(const std::vector<double>& alphas, const std::vector<double>& errors);

/// Same fit on natural-log errors, with no floor.
RateFit convergence_rate_log(const std::vector<double>& alphas,
                             const std::vector<double>& log_errors);

inline const std::vector<double> kDefaultAlphaScales{1, 2, 5, 10, 20, 50, 100};

enum class Theorem { LogLog = 1, LogRbfToRbf = 2, LogRbfToZero = 3, RbfRbf = 4 };

ProductPair product_pair(Theorem t);

/// One randomly drawn pair of members satisfying a theorem's hypotheses,
/// with the sample points its sup error is taken over.
struct TheoremConfig {
  Theorem theorem = Theorem::LogLog;
  int id = 0;
  int m = 1;
  ConjunctiveFunction first;
  ConjunctiveFunction second;
  std::vector<Eigen::VectorXd> samples;
};

struct SuiteOptions {
  int configs = 50;
  std::vector<int> dims{1, 2, 3};
  double min_gap = 0.2;
  /// Sample points closer than this to any center coordinate are skipped.
  double exclusion = 0.2;
  int samples = 10000;
  std::vector<double> alpha_scales = kDefaultAlphaScales;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

TheoremConfig random_theorem_config(Theorem t, int id, const SuiteOptions& opt);

struct SweepResult {
  Theorem theorem = Theorem::LogLog;
  int config_id = 0;
  int m = 1;
  std::vector<double> alphas;
  std::vector<double> sup_errors;
  /// ln of sup_errors, kept finite past double underflow; the fit uses these.
  std::vector<double> log_sup_errors;
  std::vector<double> mean_errors;
  RateFit fit;
};

SweepResult run_sweep(const TheoremConfig& cfg, const std::vector<double>& alphas,
                      HCaseSplit rule = HCaseSplit::Orthant);

std::vector<SweepResult> theorem_suite(Theorem t, const SuiteOptions& opt);

struct GapStats {
  double sup = 0.0;
  double mean = 0.0;
};

/// Lie-derivative approximation gaps for one nonlinear member. Four
/// quantities are compared at each sample point:
///   exact     the true Lie derivative along F = W * members
///   limit     pairwise products replaced by their limits, gradient factors kept
///   linear    the Koopman-compatible weighted sum of members
///   product   the sum of pairwise products without the gradient factors
struct MemberClosureError {
  int member = 0;
  BasisKind kind = BasisKind::Logistic;
  GapStats exact_vs_limit;
  GapStats limit_vs_linear;
  GapStats exact_vs_product;
  GapStats product_vs_linear;
  GapStats exact_vs_linear;
};

/// `weights` is m x N. The dictionary must be SILL or AugSILL.
std::vector<MemberClosureError> lie_closure_error(const Dictionary& d,
                                                  const Eigen::MatrixXd& weights,
                                                  const std::vector<Eigen::VectorXd>& samples,
                                                  HCaseSplit rule = HCaseSplit::Orthant);

struct ErrorBoundParams {
  int m = 1;
  int n_logistic = 0;
  int n_rbf = 0;
  /// m x (n_logistic + n_rbf), nonnegative.
  Eigen::MatrixXd nu;
};

/// Rows of the bound table: 1 logistic limit->linear, 2 logistic
/// exact->product, 3 RBF limit->linear, 4 RBF exact->product.
enum class BoundRow { LogisticLimit = 1, LogisticProduct = 2, RbfLimit = 3, RbfProduct = 4 };

double error_bound(const ErrorBoundParams& params, BoundRow row);

/// nu_ij = |alpha_{member,i} * w_ij| for one member of the dictionary.
ErrorBoundParams matched_bound_params(const Dictionary& d, const Eigen::MatrixXd& weights,
                                      int member);

/// AugSILL dictionary, weights and sample set for closure checks. Centers
/// lie in [-1, 1] with per-dimension gaps of at least `min_gap`, steepness in
/// [0.5, 2], weights in [-1, 1]; samples are Halton points in [-2.5, 2.5]^m
/// at least `min_gap` from every center coordinate.
struct LieFixture {
  Dictionary dictionary = Dictionary::identity(1);
  Eigen::MatrixXd weights;
  std::vector<Eigen::VectorXd> samples;
};

LieFixture random_lie_fixture(int m, int n_logistic, int n_rbf, std::uint64_t seed,
                              int samples = 10000, double min_gap = 0.2);

/// Copy of the dictionary with every steepness multiplied by `scale`.
Dictionary scaled_dictionary(const Dictionary& d, double scale);

struct BoundCheck {
  BoundRow row = BoundRow::LogisticLimit;
  int m = 1;
  /// Mean over draws of the member-averaged gap for the row.
  double mean_error = 0.0;
  double std_error = 0.0;
  /// Mean over draws of the member-averaged bound.
  double mean_bound = 0.0;
};

/// Draws `draws` random augSILL fixtures (centers and measurement uniform on
/// [-a, a], steepness |U(-a, a)|, weights uniform on [-1, 1]) and compares
/// the per-member Lie gaps at one point with error_bound, with
/// nu_ij = |alpha_li w_ij|. One entry per bound row.
std::vector<BoundCheck> bound_check(int m, int n_logistic, int n_rbf, double a, int draws,
                                    std::uint64_t seed, HCaseSplit rule = HCaseSplit::Orthant);

struct ExplosionRow {
  double y = 0.0;
  double residual = 0.0;
};

/// For dy/dt = y^2 and the monomials {1, y, ..., y^degree}, the RMS residual of
/// the best fit to d(y^degree)/dt = degree * y^(degree+1) over [1, y], for
/// each y in y_values.
std::vector<ExplosionRow> polynomial_explosion_demo(int degree, const std::vector<double>& y_values,
                                                    int samples = 256);

/// Log-log slope of residual against y.
double explosion_exponent(const std::vector<ExplosionRow>& rows);

std::vector<double> logspace(double lo, double hi, int count);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct ConjunctiveMeans {
  int m = 1;
  MeanEstimate logistic;
  MeanEstimate rbf;
  MeanEstimate h;
};

/// Monte-Carlo means of Lambda, P and H with every center, measurement and
/// steepness drawn independently from the symmetric uniform law on [-a, a].
ConjunctiveMeans conjunctive_means(int m, double a, int samples, std::uint64_t seed,
                                   HCaseSplit rule = HCaseSplit::Orthant);

}  // namespace augsill
