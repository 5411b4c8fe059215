#pragma once

#include <vector>

namespace augsill {

enum class PolynomialKind { Legendre, Hermite };

/// Values P_0..P_degree at x. Hermite is the physicists' convention.
std::vector<double> polynomial_values(PolynomialKind kind, int degree, double x);

/// Values and first derivatives P_k, P_k' for k = 0..degree.
void polynomial_values_and_derivatives(PolynomialKind kind, int degree, double x,
                                       std::vector<double>& values,
                                       std::vector<double>& derivatives);

using MultiIndex = std::vector<int>;

/// First `count` multi-indices in m variables of total degree >= 2, grouped by
/// total degree and ordered within a degree by descending lexicographic index,
/// e.g. (2,0), (1,1), (0,2), (3,0), ...
std::vector<MultiIndex> polynomial_multi_indices(int m, int count);

int total_degree(const MultiIndex& index);

}  // namespace augsill
