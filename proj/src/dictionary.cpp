#include "augsill/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "augsill/errors.hpp"

namespace augsill {

std::string_view to_string(DictionaryFamily family) {
  switch (family) {
    case DictionaryFamily::SILL: return "sill";
    case DictionaryFamily::AugSILL: return "augsill";
    case DictionaryFamily::SummedRbf: return "summed_rbf";
    case DictionaryFamily::Legendre: return "legendre";
    case DictionaryFamily::Hermite: return "hermite";
  }
  return "unknown";
}

DictionaryFamily dictionary_family_from_string(std::string_view name) {
  for (auto f : {DictionaryFamily::SILL, DictionaryFamily::AugSILL, DictionaryFamily::SummedRbf,
                 DictionaryFamily::Legendre, DictionaryFamily::Hermite})
    if (to_string(f) == name) return f;
  throw ConfigError("unknown dictionary family '" + std::string(name) + "'");
}

bool has_shape_parameters(DictionaryFamily family) {
  return family == DictionaryFamily::SILL || family == DictionaryFamily::AugSILL ||
         family == DictionaryFamily::SummedRbf;
}

namespace {

void require_m(int m) {
  if (m < 1) throw DomainError("measurement dimension must be positive");
}

void check_members(int m, const std::vector<ConjunctiveFunction>& members, BasisKind kind) {
  for (const auto& f : members) {
    if (f.dim() != m)
      throw ShapeError("dictionary member has dimension " + std::to_string(f.dim()) +
                       ", expected " + std::to_string(m));
    if (f.kind != kind)
      throw ConfigError(std::string("expected a ") + std::string(to_string(kind)) + " member");
  }
}

void check_input(const Dictionary& d, Eigen::Index n) {
  if (n != d.m())
    throw ShapeError("input has dimension " + std::to_string(n) + ", dictionary expects " +
                     std::to_string(d.m()));
}

PolynomialKind polynomial_kind(DictionaryFamily family) {
  return family == DictionaryFamily::Legendre ? PolynomialKind::Legendre
                                              : PolynomialKind::Hermite;
}

int max_degree(const Dictionary& d) {
  int deg = 1;
  for (const auto& idx : d.multi_indices())
    for (int k : idx) deg = std::max(deg, k);
  return deg;
}

}  // namespace

Dictionary Dictionary::identity(int m) {
  require_m(m);
  return Dictionary(DictionaryFamily::SILL, m);
}

Dictionary Dictionary::sill(int m, std::vector<ConjunctiveFunction> logistic) {
  require_m(m);
  check_members(m, logistic, BasisKind::Logistic);
  Dictionary d(DictionaryFamily::SILL, m);
  d.n_ = d.n_logistic_ = static_cast<int>(logistic.size());
  d.conjunctive_ = std::move(logistic);
  return d;
}

Dictionary Dictionary::aug_sill(int m, std::vector<ConjunctiveFunction> logistic,
                                std::vector<ConjunctiveFunction> rbf) {
  require_m(m);
  check_members(m, logistic, BasisKind::Logistic);
  check_members(m, rbf, BasisKind::Rbf);
  Dictionary d(DictionaryFamily::AugSILL, m);
  d.n_logistic_ = static_cast<int>(logistic.size());
  d.n_rbf_ = static_cast<int>(rbf.size());
  d.n_ = d.n_logistic_ + d.n_rbf_;
  d.conjunctive_ = std::move(logistic);
  d.conjunctive_.insert(d.conjunctive_.end(), rbf.begin(), rbf.end());
  return d;
}

Dictionary Dictionary::summed_rbf(int m, std::vector<std::vector<ScalarBasisParams>> members) {
  require_m(m);
  for (const auto& p : members)
    if (static_cast<int>(p.size()) != m)
      throw ShapeError("summed RBF member has wrong dimension");
  Dictionary d(DictionaryFamily::SummedRbf, m);
  d.n_ = d.n_rbf_ = static_cast<int>(members.size());
  d.summed_ = std::move(members);
  return d;
}

Dictionary Dictionary::polynomial(DictionaryFamily family, int m, int count) {
  require_m(m);
  if (family != DictionaryFamily::Legendre && family != DictionaryFamily::Hermite)
    throw ConfigError("polynomial dictionary must be legendre or hermite");
  Dictionary d(family, m);
  d.indices_ = polynomial_multi_indices(m, count);
  d.n_ = count;
  return d;
}

static const ScalarBasisParams& member_param(const Dictionary& d, int j, int i) {
  if (!has_shape_parameters(d.family()))
    throw UnsupportedFamilyError("polynomial dictionaries have no shape parameters");
  if (j < 0 || j >= d.size() || i < 0 || i >= d.m()) throw ShapeError("member index out of range");
  if (d.family() == DictionaryFamily::SummedRbf) return d.summed()[j][i];
  return d.conjunctive()[j].params[i];
}

double Dictionary::center(int j, int i) const { return member_param(*this, j, i).center(); }
double Dictionary::steepness(int j, int i) const { return member_param(*this, j, i).steepness(); }

void Dictionary::set_param(int j, int i, double center, double steepness) {
  if (family_ == DictionaryFamily::SummedRbf)
    summed_[j][i] = ScalarBasisParams(center, steepness);
  else
    conjunctive_[j].params[i] = ScalarBasisParams(center, steepness);
}

Eigen::VectorXd Dictionary::packed_parameters() const {
  if (!has_shape_parameters(family_)) return {};
  Eigen::VectorXd out(2 * n_ * m_);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < m_; ++i) {
      const auto& p = member_param(*this, j, i);
      out[2 * (j * m_ + i)] = p.center();
      out[2 * (j * m_ + i) + 1] = std::log(p.steepness());
    }
  return out;
}

void Dictionary::set_packed_parameters(const Eigen::VectorXd& packed) {
  if (!has_shape_parameters(family_))
    throw UnsupportedFamilyError("polynomial dictionaries have no shape parameters");
  if (packed.size() != 2 * n_ * m_) throw ShapeError("packed parameter vector has wrong length");
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < m_; ++i)
      set_param(j, i, packed[2 * (j * m_ + i)], std::exp(packed[2 * (j * m_ + i) + 1]));
}

Eigen::VectorXd lift(const Dictionary& d, const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_input(d, y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (!std::isfinite(y[i])) throw DomainError("lift input must be finite");
  const int m = d.m();
  Eigen::VectorXd psi(d.lifted_dim());
  psi[0] = 1.0;
  psi.segment(1, m) = y;

  switch (d.family()) {
    case DictionaryFamily::SILL:
    case DictionaryFamily::AugSILL:
      for (int j = 0; j < d.size(); ++j) psi[1 + m + j] = eval_conjunctive(d.conjunctive()[j], y);
      break;
    case DictionaryFamily::SummedRbf:
      for (int j = 0; j < d.size(); ++j) {
        double sum = 0.0;
        for (int i = 0; i < m; ++i) sum += eval_scalar_basis(BasisKind::Rbf, y[i], d.summed()[j][i]);
        psi[1 + m + j] = sum;
      }
      break;
    case DictionaryFamily::Legendre:
    case DictionaryFamily::Hermite: {
      const auto kind = polynomial_kind(d.family());
      const int deg = max_degree(d);
      std::vector<std::vector<double>> table(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) table[i] = polynomial_values(kind, deg, y[i]);
      for (int j = 0; j < d.size(); ++j) {
        double value = 1.0;
        for (int i = 0; i < m; ++i) value *= table[i][d.multi_indices()[j][i]];
        psi[1 + m + j] = value;
      }
      break;
    }
  }
  return psi;
}

Eigen::MatrixXd lift_rows(const Dictionary& d, const Eigen::MatrixXd& states) {
  if (states.cols() != d.m()) check_input(d, states.cols());
  Eigen::MatrixXd out(states.rows(), d.lifted_dim());
  for (Eigen::Index r = 0; r < states.rows(); ++r) out.row(r) = lift(d, states.row(r).transpose());
  return out;
}

Eigen::MatrixXd lift_jacobian(const Dictionary& d, const Eigen::Ref<const Eigen::VectorXd>& y) {
  check_input(d, y.size());
  const int m = d.m();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d.lifted_dim(), m);
  jac.block(1, 0, m, m).setIdentity();

  switch (d.family()) {
    case DictionaryFamily::SILL:
    case DictionaryFamily::AugSILL:
      for (int j = 0; j < d.size(); ++j)
        jac.row(1 + m + j) = conjunctive_gradient(d.conjunctive()[j], y).transpose();
      break;
    case DictionaryFamily::SummedRbf:
      for (int j = 0; j < d.size(); ++j)
        for (int i = 0; i < m; ++i) {
          const auto& p = d.summed()[j][i];
          const auto lp = logistic_pair(p.steepness() * (y[i] - p.center()));
          jac(1 + m + j, i) =
              p.steepness() * (lp.complement - lp.value) * lp.value * lp.complement;
        }
      break;
    case DictionaryFamily::Legendre:
    case DictionaryFamily::Hermite: {
      const auto kind = polynomial_kind(d.family());
      const int deg = max_degree(d);
      std::vector<std::vector<double>> val(static_cast<std::size_t>(m)), der(val.size());
      for (int i = 0; i < m; ++i) polynomial_values_and_derivatives(kind, deg, y[i], val[i], der[i]);
      for (int j = 0; j < d.size(); ++j) {
        const auto& idx = d.multi_indices()[j];
        for (int i = 0; i < m; ++i) {
          double g = der[i][idx[i]];
          for (int l = 0; l < m; ++l)
            if (l != i) g *= val[l][idx[l]];
          jac(1 + m + j, i) = g;
        }
      }
      break;
    }
  }
  return jac;
}

ParamGradients param_gradients(const Dictionary& d, const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (!has_shape_parameters(d.family()))
    throw UnsupportedFamilyError("polynomial dictionaries have no trainable shape parameters");
  check_input(d, y.size());
  const int m = d.m();
  ParamGradients g{Eigen::MatrixXd::Zero(d.size(), m), Eigen::MatrixXd::Zero(d.size(), m)};

  if (d.family() == DictionaryFamily::SummedRbf) {
    for (int j = 0; j < d.size(); ++j)
      for (int i = 0; i < m; ++i) {
        const auto& p = d.summed()[j][i];
        const double u = y[i] - p.center();
        const auto lp = logistic_pair(p.steepness() * u);
        const double common = (lp.complement - lp.value) * lp.value * lp.complement;
        g.d_center(j, i) = -p.steepness() * common;
        g.d_steepness(j, i) = u * common;
      }
    return g;
  }

  for (int j = 0; j < d.size(); ++j) {
    const auto& f = d.conjunctive()[j];
    const double value = eval_conjunctive(f, y);
    for (int i = 0; i < m; ++i) {
      const auto& p = f.params[i];
      const double u = y[i] - p.center();
      const auto lp = logistic_pair(p.steepness() * u);
      const double slope =
          f.kind == BasisKind::Logistic ? lp.complement : lp.complement - lp.value;
      g.d_center(j, i) = -p.steepness() * slope * value;
      g.d_steepness(j, i) = u * slope * value;
    }
  }
  return g;
}

bool h_selects_rbf(const ConjunctiveFunction& theta_l, const ConjunctiveFunction& theta_k,
                   HCaseSplit rule) {
  if (theta_l.dim() != theta_k.dim()) throw ShapeError("H arguments differ in dimension");
  if (theta_l.kind != BasisKind::Logistic || theta_k.kind != BasisKind::Rbf)
    throw ConfigError("H expects a logistic and an RBF member");
  int above = 0;
  for (int i = 0; i < theta_l.dim(); ++i)
    if (theta_k.params[i].center() >= theta_l.params[i].center()) ++above;
  return rule == HCaseSplit::Orthant ? above == theta_l.dim() : above > 0;
}

double h_function(const Eigen::Ref<const Eigen::VectorXd>& y, const ConjunctiveFunction& theta_l,
                  const ConjunctiveFunction& theta_k, HCaseSplit rule) {
  if (y.size() != theta_k.dim()) throw ShapeError("H input has wrong dimension");
  return h_selects_rbf(theta_l, theta_k, rule) ? eval_conjunctive(theta_k, y) : 0.0;
}

}  // namespace augsill
