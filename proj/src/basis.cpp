#include "augsill/basis.hpp"

#include <cmath>
#include <string>

#include "augsill/errors.hpp"

namespace augsill {

std::string_view to_string(BasisKind kind) {
  return kind == BasisKind::Logistic ? "logistic" : "rbf";
}

BasisKind basis_kind_from_string(std::string_view name) {
  if (name == "logistic") return BasisKind::Logistic;
  if (name == "rbf") return BasisKind::Rbf;
  throw ConfigError("unknown basis kind '" + std::string(name) + "'");
}

ScalarBasisParams::ScalarBasisParams(double center, double steepness)
    : center_(center), steepness_(steepness) {
  if (!std::isfinite(center)) throw DomainError("basis center must be finite");
  if (!std::isfinite(steepness) || !(steepness > 0.0))
    throw DomainError("basis steepness must be finite and positive, got " +
                      std::to_string(steepness));
}

double eval_scalar_basis(BasisKind kind, double y, const ScalarBasisParams& p) {
  if (!std::isfinite(y)) throw DomainError("basis input must be finite");
  const double x = p.steepness() * (y - p.center());
  if (kind == BasisKind::Logistic) return logistic(x);
  const auto [value, complement] = logistic_pair(x);
  return value * complement;
}

ConjunctiveFunction ConjunctiveFunction::uniform(BasisKind kind, const Eigen::VectorXd& centers,
                                                 double steepness) {
  ConjunctiveFunction f;
  f.kind = kind;
  f.params.reserve(static_cast<std::size_t>(centers.size()));
  for (Eigen::Index i = 0; i < centers.size(); ++i) f.params.emplace_back(centers[i], steepness);
  return f;
}

namespace {

void check_dim(const ConjunctiveFunction& f, Eigen::Index n) {
  if (f.dim() != n)
    throw ShapeError("conjunctive function has dimension " + std::to_string(f.dim()) +
                     " but input has " + std::to_string(n));
}

}  // namespace

double eval_conjunctive(const ConjunctiveFunction& f, const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_dim(f, y.size());
  double value = 1.0;
  for (int i = 0; i < f.dim(); ++i) value *= eval_scalar_basis(f.kind, y[i], f.params[i]);
  return value;
}

double log_eval_conjunctive(const ConjunctiveFunction& f,
                            const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_dim(f, y.size());
  double total = 0.0;
  for (int i = 0; i < f.dim(); ++i) {
    if (!std::isfinite(y[i])) throw DomainError("basis input must be finite");
    const double x = f.params[i].steepness() * (y[i] - f.params[i].center());
    total += log_logistic(x);
    if (f.kind == BasisKind::Rbf) total += log_logistic(-x);
  }
  return total;
}

Eigen::VectorXd conjunctive_gradient(const ConjunctiveFunction& f,
                                     const Eigen::Ref<const Eigen::VectorXd>& y) {
  const double value = eval_conjunctive(f, y);
  Eigen::VectorXd grad(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    const double a = f.params[i].steepness();
    const auto lp = logistic_pair(a * (y[i] - f.params[i].center()));
    // d/dy_i: a(1-l) for a logistic factor, a(1-2l) for an RBF factor.
    const double slope =
        f.kind == BasisKind::Logistic ? lp.complement : lp.complement - lp.value;
    grad[i] = a * slope * value;
  }
  return grad;
}

ConjunctiveFunction scaled(const ConjunctiveFunction& f, double scale) {
  ConjunctiveFunction out;
  out.kind = f.kind;
  out.params.reserve(f.params.size());
  for (const auto& p : f.params) out.params.emplace_back(p.center(), p.steepness() * scale);
  return out;
}

}  // namespace augsill
