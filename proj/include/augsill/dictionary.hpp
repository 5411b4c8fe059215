#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "augsill/basis.hpp"
#include "augsill/polynomial.hpp"

namespace augsill {

enum class DictionaryFamily { SILL, AugSILL, SummedRbf, Legendre, Hermite };

std::string_view to_string(DictionaryFamily family);
DictionaryFamily dictionary_family_from_string(std::string_view name);

bool has_shape_parameters(DictionaryFamily family);

/// Lifting ψ(y) = [1, y, members(y)]. Member storage depends on the family:
/// conjunctive functions (SILL, AugSILL), per-dimension scalar RBF
/// parameters (SummedRbf), or multi-indices (Legendre, Hermite).
class Dictionary {
 public:
  /// The bare [1, y] lifting.
  static Dictionary identity(int m);
  static Dictionary sill(int m, std::vector<ConjunctiveFunction> logistic);
  static Dictionary aug_sill(int m, std::vector<ConjunctiveFunction> logistic,
                             std::vector<ConjunctiveFunction> rbf);
  static Dictionary summed_rbf(int m, std::vector<std::vector<ScalarBasisParams>> members);
  static Dictionary polynomial(DictionaryFamily family, int m, int count);

  DictionaryFamily family() const noexcept { return family_; }
  int m() const noexcept { return m_; }
  /// Number of nonlinear members N.
  int size() const noexcept { return n_; }
  int lifted_dim() const noexcept { return 1 + m_ + n_; }
  int n_logistic() const noexcept { return n_logistic_; }
  int n_rbf() const noexcept { return n_rbf_; }

  /// Logistic members followed by RBF members (SILL, AugSILL).
  const std::vector<ConjunctiveFunction>& conjunctive() const noexcept { return conjunctive_; }
  const std::vector<std::vector<ScalarBasisParams>>& summed() const noexcept { return summed_; }
  const std::vector<MultiIndex>& multi_indices() const noexcept { return indices_; }

  /// Center of member j along dimension i (shape-parameter families).
  double center(int j, int i) const;
  double steepness(int j, int i) const;

  /// Shape parameters packed member-major as (mu_ji, log alpha_ji) pairs;
  /// length 2*N*m. Empty for polynomial families.
  Eigen::VectorXd packed_parameters() const;
  void set_packed_parameters(const Eigen::VectorXd& packed);

  friend bool operator==(const Dictionary&, const Dictionary&) = default;

 private:
  Dictionary(DictionaryFamily family, int m) : family_(family), m_(m) {}
  void set_param(int j, int i, double center, double steepness);

  DictionaryFamily family_;
  int m_;
  int n_ = 0;
  int n_logistic_ = 0;
  int n_rbf_ = 0;
  std::vector<ConjunctiveFunction> conjunctive_;
  std::vector<std::vector<ScalarBasisParams>> summed_;
  std::vector<MultiIndex> indices_;
};

Eigen::VectorXd lift(const Dictionary& d, const Eigen::Ref<const Eigen::VectorXd>& y);

/// Lifts every row of `states` (r x m); returns r x N_psi.
Eigen::MatrixXd lift_rows(const Dictionary& d, const Eigen::MatrixXd& states);

/// d psi / d y, an N_psi x m matrix.
Eigen::MatrixXd lift_jacobian(const Dictionary& d, const Eigen::Ref<const Eigen::VectorXd>& y);

/// Derivatives of each nonlinear member with respect to its own parameters.
/// Row j, column i holds d member_j / d mu_ji (resp. d alpha_ji).
struct ParamGradients {
  Eigen::MatrixXd d_center;
  Eigen::MatrixXd d_steepness;
};

ParamGradients param_gradients(const Dictionary& d, const Eigen::Ref<const Eigen::VectorXd>& y);

/// Which center orderings make the product of a logistic and an RBF tend to the RBF.
/// Orthant: mu_k >= mu_l in every dimension. AnyDimension: in at least one.
enum class HCaseSplit { Orthant, AnyDimension };

bool h_selects_rbf(const ConjunctiveFunction& theta_l, const ConjunctiveFunction& theta_k,
                   HCaseSplit rule = HCaseSplit::Orthant);

double h_function(const Eigen::Ref<const Eigen::VectorXd>& y, const ConjunctiveFunction& theta_l,
                  const ConjunctiveFunction& theta_k, HCaseSplit rule = HCaseSplit::Orthant);

}  // namespace augsill
