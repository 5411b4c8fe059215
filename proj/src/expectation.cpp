#include "augsill/expectation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "augsill/errors.hpp"
#include "augsill/parallel.hpp"
#include "augsill/random.hpp"

namespace augsill {

void SamplingSpec::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be finite and positive");
  if (quadrature_points < 64) throw ConfigError("quadrature needs at least 64 panels");
  if (mc_samples < 1000) throw ConfigError("Monte-Carlo needs at least 1000 samples");
}

double pdf_g(double z, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be finite and positive");
  const double s = 2.0 * a * a;
  const double u = std::abs(z);
  if (u >= s) return 0.0;
  if (u == 0.0) return std::numeric_limits<double>::infinity();
  return (std::log(s / u) + u / s - 1.0) / s;
}

double unit_basis(BasisKind kind, double x) {
  if (kind == BasisKind::Logistic) return logistic(x);
  const auto p = logistic_pair(x);
  return p.value * p.complement;
}

double integrate_against_g(const std::function<double(double)>& h, const SamplingSpec& spec) {
  spec.validate();
  const double s = 2.0 * spec.a * spec.a;
  // z = s e^{-t} on each half-line turns g(z) dz into (t + e^{-t} - 1) e^{-t} dt.
  constexpr double kUpper = 40.0;
  const int panels = spec.quadrature_points;
  double total = 0.0, error = 0.0, magnitude = 0.0;
  for (double sign : {1.0, -1.0}) {
    auto f = [&](double t) {
      const double e = std::exp(-t);
      return (t + std::expm1(-t)) * e * h(sign * s * e);
    };
    for (int p = 0; p < panels; ++p) {
      const double lo = kUpper * p / panels, hi = kUpper * (p + 1) / panels;
      double err = 0.0, l1 = 0.0;
      total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 10, 1e-14,
                                                                              &err, &l1);
      error += err;
      magnitude += l1;
    }
  }
  if (!std::isfinite(total) || error > 1e-8 * std::max(magnitude, 1e-300))
    throw IntegrationError("quadrature error estimate " + std::to_string(error) +
                           " exceeds tolerance");
  return total;
}

double pdf_mass(const SamplingSpec& spec) {
  return integrate_against_g([](double) { return 1.0; }, spec);
}

Moments expected_value(BasisKind kind, const SamplingSpec& spec) {
  const double mean = integrate_against_g([kind](double z) { return unit_basis(kind, z); }, spec);
  const double second = integrate_against_g(
      [kind](double z) {
        const double v = unit_basis(kind, z);
        return v * v;
      },
      spec);
  return {mean, std::max(0.0, second - mean * mean)};
}

MonteCarloEstimate monte_carlo_expectation(BasisKind kind, const SamplingSpec& spec) {
  spec.validate();
  constexpr long kBatch = 100000;
  const long batches = (spec.mc_samples + kBatch - 1) / kBatch;
  std::vector<std::array<double, 2>> partial(static_cast<std::size_t>(batches));
  parallel_for(partial.size(), spec.workers, [&](std::size_t b) {
    Rng rng(spec.seed, b, 0xE4);
    const long count = std::min(kBatch, spec.mc_samples - static_cast<long>(b) * kBatch);
    double sum = 0.0, sum_sq = 0.0;
    for (long k = 0; k < count; ++k) {
      const double x = rng.uniform(-spec.a, spec.a);
      const double y = rng.uniform(-spec.a, spec.a);
      const double z = rng.uniform(-spec.a, spec.a);
      const double v = unit_basis(kind, x * (y - z));
      sum += v;
      sum_sq += v * v;
    }
    partial[b] = {sum, sum_sq};
  });
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& p : partial) {
    sum += p[0];
    sum_sq += p[1];
  }
  const auto n = static_cast<double>(spec.mc_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

}  // namespace augsill
