#include "augsill/polynomial.hpp"

#include <functional>
#include <numeric>

#include "augsill/errors.hpp"

namespace augsill {

void polynomial_values_and_derivatives(PolynomialKind kind, int degree, double x,
                                       std::vector<double>& values,
                                       std::vector<double>& derivatives) {
  if (degree < 0) throw DomainError("polynomial degree must be nonnegative");
  values.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  derivatives.assign(values.size(), 0.0);
  values[0] = 1.0;
  if (degree == 0) return;

  if (kind == PolynomialKind::Legendre) {
    // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1};  P_{k+1}' = P_{k-1}' + (2k+1) P_k
    values[1] = x;
    derivatives[1] = 1.0;
    for (int k = 1; k < degree; ++k) {
      values[k + 1] = ((2.0 * k + 1.0) * x * values[k] - k * values[k - 1]) / (k + 1.0);
      derivatives[k + 1] = derivatives[k - 1] + (2.0 * k + 1.0) * values[k];
    }
  } else {
    // H_{k+1} = 2x H_k - 2k H_{k-1};  H_k' = 2k H_{k-1}
    values[1] = 2.0 * x;
    derivatives[1] = 2.0;
    for (int k = 1; k < degree; ++k) {
      values[k + 1] = 2.0 * x * values[k] - 2.0 * k * values[k - 1];
      derivatives[k + 1] = 2.0 * (k + 1.0) * values[k];
    }
  }
}

std::vector<double> polynomial_values(PolynomialKind kind, int degree, double x) {
  std::vector<double> values, derivatives;
  polynomial_values_and_derivatives(kind, degree, x, values, derivatives);
  return values;
}

int total_degree(const MultiIndex& index) {
  return std::accumulate(index.begin(), index.end(), 0);
}

std::vector<MultiIndex> polynomial_multi_indices(int m, int count) {
  if (m < 1) throw DomainError("polynomial dictionary needs m >= 1");
  if (count < 0) throw DomainError("member count must be nonnegative");
  std::vector<MultiIndex> out;
  MultiIndex current(static_cast<std::size_t>(m), 0);

  // Emits every index of total degree `degree` in descending lexicographic order.
  std::function<void(int, int)> fill = [&](int position, int remaining) {
    if (static_cast<int>(out.size()) >= count) return;
    if (position == m - 1) {
      current[position] = remaining;
      out.push_back(current);
      return;
    }
    for (int d = remaining; d >= 0; --d) {
      current[position] = d;
      fill(position + 1, remaining - d);
      if (static_cast<int>(out.size()) >= count) return;
    }
  };

  for (int degree = 2; static_cast<int>(out.size()) < count; ++degree) {
    if (degree > 10000) throw DomainError("too many polynomial members requested");
    fill(0, degree);
  }
  return out;
}

}  // namespace augsill
