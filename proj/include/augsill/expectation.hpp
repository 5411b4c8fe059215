#pragma once

#include <cstdint>
#include <functional>

#include "augsill/basis.hpp"

namespace augsill {

struct SamplingSpec {
  /// Half-width of the symmetric uniform law.
  double a = 1.0;
  /// Quadrature panels per half-line; at least 64.
  int quadrature_points = 64;
  long mc_samples = 1000000;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  void validate() const;
};

/// Density of X (Y - Z) for X, Y, Z iid uniform on [-a, a]; zero off its
/// support [-2a^2, 2a^2] and unbounded (log singularity) at z = 0.
double pdf_g(double z, double a);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Centered unit logistic or RBF of x.
double unit_basis(BasisKind kind, double x);

/// Integral of g against an arbitrary integrand, split at the singularity.
double integrate_against_g(const std::function<double(double)>& h, const SamplingSpec& spec);

/// E[h(X(Y - Z))] and Var[...] for h the unit logistic or RBF, by quadrature.
Moments expected_value(BasisKind kind, const SamplingSpec& spec);

/// Integral of g over its support (should be 1).
double pdf_mass(const SamplingSpec& spec);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

MonteCarloEstimate monte_carlo_expectation(BasisKind kind, const SamplingSpec& spec);

}  // namespace augsill
