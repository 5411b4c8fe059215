#pragma once

// Independent long-double reference implementations used as test oracles.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "augsill/dictionary.hpp"

namespace oracle {

using Real = long double;
using VecL = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using MatL = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

inline Real logistic(Real x) { return 1.0L / (1.0L + std::exp(-x)); }

inline Real rbf(Real x) {
  const Real e = std::exp(-x);
  return e / ((1.0L + e) * (1.0L + e));
}

inline Real scalar(augsill::BasisKind kind, Real y, Real mu, Real alpha) {
  const Real x = alpha * (y - mu);
  return kind == augsill::BasisKind::Logistic ? logistic(x) : rbf(x);
}

/// P_k(x) from the three-term recurrence (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}.
inline Real legendre(int k, Real x) {
  Real p0 = 1.0L, p1 = x;
  if (k == 0) return p0;
  for (int n = 1; n < k; ++n) {
    const Real p2 = ((2.0L * n + 1.0L) * x * p1 - n * p0) / (n + 1.0L);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// Physicists' H_k(x) from H_{n+1} = 2x H_n - 2n H_{n-1}.
inline Real hermite(int k, Real x) {
  Real h0 = 1.0L, h1 = 2.0L * x;
  if (k == 0) return h0;
  for (int n = 1; n < k; ++n) {
    const Real h2 = 2.0L * x * h1 - 2.0L * n * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

/// Explicit shape parameters of one nonlinear member, so that finite
/// differences can perturb them without going through the dictionary.
struct Member {
  augsill::BasisKind kind = augsill::BasisKind::Logistic;
  bool summed = false;
  std::vector<Real> mu;
  std::vector<Real> alpha;
};

inline std::vector<Member> members(const augsill::Dictionary& d) {
  std::vector<Member> out;
  using augsill::DictionaryFamily;
  if (d.family() == DictionaryFamily::Legendre || d.family() == DictionaryFamily::Hermite)
    return out;
  for (int j = 0; j < d.size(); ++j) {
    Member mem;
    if (d.family() == DictionaryFamily::SummedRbf) {
      mem.kind = augsill::BasisKind::Rbf;
      mem.summed = true;
    } else {
      mem.kind = d.conjunctive()[j].kind;
    }
    for (int i = 0; i < d.m(); ++i) {
      mem.mu.push_back(d.center(j, i));
      mem.alpha.push_back(d.steepness(j, i));
    }
    out.push_back(mem);
  }
  return out;
}

inline Real eval_member(const Member& mem, const VecL& y) {
  Real v = mem.summed ? 0.0L : 1.0L;
  for (std::size_t i = 0; i < mem.mu.size(); ++i) {
    const Real s = scalar(mem.kind, y[static_cast<Eigen::Index>(i)], mem.mu[i], mem.alpha[i]);
    if (mem.summed) v += s;
    else v *= s;
  }
  return v;
}

inline VecL lift(const augsill::Dictionary& d, const VecL& y) {
  const int m = d.m();
  VecL out(d.lifted_dim());
  out[0] = 1.0L;
  for (int i = 0; i < m; ++i) out[1 + i] = y[i];
  using augsill::DictionaryFamily;
  if (d.family() == DictionaryFamily::Legendre || d.family() == DictionaryFamily::Hermite) {
    for (int j = 0; j < d.size(); ++j) {
      Real v = 1.0L;
      for (int i = 0; i < m; ++i) {
        const int k = d.multi_indices()[j][i];
        v *= d.family() == DictionaryFamily::Legendre ? legendre(k, y[i]) : hermite(k, y[i]);
      }
      out[1 + m + j] = v;
    }
    return out;
  }
  const auto mems = members(d);
  for (int j = 0; j < d.size(); ++j) out[1 + m + j] = eval_member(mems[j], y);
  return out;
}

/// Central-difference Jacobian of the long-double lift.
inline MatL fd_jacobian(const augsill::Dictionary& d, const Eigen::VectorXd& y, Real h = 1e-6L) {
  const VecL yl = y.cast<Real>();
  MatL J(d.lifted_dim(), d.m());
  for (int i = 0; i < d.m(); ++i) {
    VecL up = yl, dn = yl;
    up[i] += h;
    dn[i] -= h;
    J.col(i) = (lift(d, up) - lift(d, dn)) / (2.0L * h);
  }
  return J;
}

/// Central differences of member j with respect to mu_ji and alpha_ji.
struct ParamFd {
  MatL d_center;
  MatL d_steepness;
};

inline ParamFd fd_params(const augsill::Dictionary& d, const Eigen::VectorXd& y, Real h = 1e-6L) {
  const VecL yl = y.cast<Real>();
  const auto mems = members(d);
  ParamFd out{MatL(d.size(), d.m()), MatL(d.size(), d.m())};
  for (int j = 0; j < d.size(); ++j)
    for (int i = 0; i < d.m(); ++i) {
      Member up = mems[j], dn = mems[j];
      up.mu[i] += h;
      dn.mu[i] -= h;
      out.d_center(j, i) = (eval_member(up, yl) - eval_member(dn, yl)) / (2.0L * h);
      up = mems[j];
      dn = mems[j];
      up.alpha[i] += h;
      dn.alpha[i] -= h;
      out.d_steepness(j, i) = (eval_member(up, yl) - eval_member(dn, yl)) / (2.0L * h);
    }
  return out;
}

/// exp(A) by scaling, a 30-term Taylor series and repeated squaring.
inline MatL expm(const MatL& A) {
  const Real norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0L, squarings) > 0.25L) ++squarings;
  const MatL B = A / std::ldexp(1.0L, squarings);
  MatL term = MatL::Identity(A.rows(), A.cols());
  MatL sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * B / static_cast<Real>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// |a - b| relative to |b|, or absolute when |b| is below `floor`.
inline double rel_error(Real a, Real b, Real floor = 1e-8L) {
  const Real diff = std::abs(a - b);
  return static_cast<double>(std::abs(b) > floor ? diff / std::abs(b) : diff);
}

}  // namespace oracle
