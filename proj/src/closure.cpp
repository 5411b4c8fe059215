#include "augsill/closure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "augsill/errors.hpp"
#include "augsill/parallel.hpp"
#include "augsill/random.hpp"

namespace augsill {

ConjunctiveFunction theta_star(const ConjunctiveFunction& a, const ConjunctiveFunction& b) {
  if (a.dim() != b.dim()) throw ShapeError("members differ in dimension");
  ConjunctiveFunction out;
  out.kind = BasisKind::Logistic;
  for (int i = 0; i < a.dim(); ++i) {
    const auto& pa = a.params[i];
    const auto& pb = b.params[i];
    if (pa.center() > pb.center()) out.params.push_back(pa);
    else if (pb.center() > pa.center()) out.params.push_back(pb);
    else out.params.push_back(pa.steepness() >= pb.steepness() ? pa : pb);
  }
  return out;
}

namespace {

void check_hypothesis(const Eigen::Ref<const Eigen::VectorXd>& y, const ConjunctiveFunction& f,
                      double tol = 1e-9) {
  if (y.size() != f.dim()) throw ShapeError("point and member differ in dimension");
  for (int i = 0; i < f.dim(); ++i)
    if (std::abs(y[i] - f.params[i].center()) < tol)
      throw HypothesisError("point lies on a center in dimension " + std::to_string(i));
}

}  // namespace

namespace {

/// log(1 - e^s) for s < 0.
double log1m_exp(double s) {
  return s > -0.6931471805599453 ? std::log(-std::expm1(s)) : std::log1p(-std::exp(s));
}

/// log(-log lambda(x)) = log(softplus(-x)), finite for every finite x.
double log_neg_log_logistic(double x) {
  if (x <= 0.0) return std::log(-x + std::log1p(std::exp(x)));
  const double u = std::exp(-x);
  return -x + (u < 1e-8 ? -0.5 * u : std::log(std::log1p(u) / u));
}

/// log(1 - prod_i lambda(x_i)), accurate when the product is within
/// rounding of 1.
double log_one_minus_logistic_product(const std::vector<double>& xs) {
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  for (double x : xs) {
    terms.push_back(log_neg_log_logistic(x));
    top = std::max(top, terms.back());
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  // L = log(-log prod)
  const double L = top + std::log(sum);
  if (L < -30.0) return L;
  return log1m_exp(-std::exp(L));
}

}  // namespace

double log_product_error(ProductPair pair, const Eigen::Ref<const Eigen::VectorXd>& y,
                         const ConjunctiveFunction& theta_l, const ConjunctiveFunction& theta_other,
                         double alpha_scale, HCaseSplit rule) {
  if (!(alpha_scale > 0.0) || !std::isfinite(alpha_scale))
    throw DomainError("alpha scale must be finite and positive");
  check_hypothesis(y, theta_l);
  check_hypothesis(y, theta_other);
  const auto l = scaled(theta_l, alpha_scale);
  const auto o = scaled(theta_other, alpha_scale);

  switch (pair) {
    case ProductPair::LogLog: {
      if (l.kind != BasisKind::Logistic || o.kind != BasisKind::Logistic)
        throw ConfigError("LogLog expects two logistic members");
      // The product is Lambda(theta*) times the factors theta* left out, so
      // the gap is Lambda(theta*) (1 - prod(left out)).
      const auto star = theta_star(l, o);
      std::vector<double> left_out;
      for (int i = 0; i < l.dim(); ++i) {
        const auto& p = star.params[i] == l.params[i] ? o.params[i] : l.params[i];
        left_out.push_back(p.steepness() * (y[i] - p.center()));
      }
      return log_eval_conjunctive(star, y) + log_one_minus_logistic_product(left_out);
    }
    case ProductPair::LogRbf: {
      const double log_p = log_eval_conjunctive(o, y);
      if (h_selects_rbf(l, o, rule)) {
        std::vector<double> xs;
        for (int i = 0; i < l.dim(); ++i)
          xs.push_back(l.params[i].steepness() * (y[i] - l.params[i].center()));
        return log_p + log_one_minus_logistic_product(xs);
      }
      return log_eval_conjunctive(l, y) + log_p;
    }
    case ProductPair::RbfRbf:
      if (l.kind != BasisKind::Rbf || o.kind != BasisKind::Rbf)
        throw ConfigError("RbfRbf expects two RBF members");
      return log_eval_conjunctive(l, y) + log_eval_conjunctive(o, y);
  }
  throw ConfigError("unknown product pair");
}

double product_error(ProductPair pair, const Eigen::Ref<const Eigen::VectorXd>& y,
                     const ConjunctiveFunction& theta_l, const ConjunctiveFunction& theta_other,
                     double alpha_scale, HCaseSplit rule) {
  return std::exp(log_product_error(pair, y, theta_l, theta_other, alpha_scale, rule));
}

RateFit convergence_rate_log(const std::vector<double>& alphas,
                             const std::vector<double>& log_errors) {
  if (alphas.size() != log_errors.size()) throw ShapeError("alphas and errors differ in length");
  if (alphas.size() < 5) throw DomainError("rate fit needs at least 5 sweep points");
  for (double v : log_errors)
    if (!std::isfinite(v)) throw DomainError("rate fit got a non-finite log error");
  const auto n = static_cast<double>(alphas.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    mx += alphas[k];
    my += log_errors[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    sxx += (alphas[k] - mx) * (alphas[k] - mx);
    sxy += (alphas[k] - mx) * (log_errors[k] - my);
    syy += (log_errors[k] - my) * (log_errors[k] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("rate fit needs distinct alphas");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const double r = log_errors[k] - (fit.intercept + fit.slope * alphas[k]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

RateFit convergence_rate(const std::vector<double>& alphas, const std::vector<double>& errors) {
  std::vector<double> logs;
  for (double e : errors) {
    if (!(e >= 0.0)) throw DomainError("rate fit got a negative or NaN error");
    logs.push_back(std::log(std::max(e, kErrorFloor)));
  }
  return convergence_rate_log(alphas, logs);
}

ProductPair product_pair(Theorem t) {
  switch (t) {
    case Theorem::LogLog: return ProductPair::LogLog;
    case Theorem::LogRbfToRbf:
    case Theorem::LogRbfToZero: return ProductPair::LogRbf;
    case Theorem::RbfRbf: return ProductPair::RbfRbf;
  }
  throw ConfigError("unknown theorem");
}

TheoremConfig random_theorem_config(Theorem t, int id, const SuiteOptions& opt) {
  if (opt.dims.empty()) throw ConfigError("no dimensions to draw from");
  if (!(opt.min_gap > 0.0)) throw ConfigError("center gap must be positive");
  TheoremConfig cfg;
  cfg.theorem = t;
  cfg.id = id;
  cfg.m = opt.dims[static_cast<std::size_t>(id) % opt.dims.size()];
  Rng rng(opt.seed, static_cast<std::uint64_t>(id), 0x7E00 + static_cast<std::uint64_t>(t));

  const BasisKind first_kind = t == Theorem::RbfRbf ? BasisKind::Rbf : BasisKind::Logistic;
  const BasisKind second_kind = t == Theorem::LogLog ? BasisKind::Logistic : BasisKind::Rbf;
  cfg.first.kind = first_kind;
  cfg.second.kind = second_kind;
  for (int i = 0; i < cfg.m; ++i) {
    double a = 0.0, b = 0.0;
    switch (t) {
      case Theorem::LogLog:
      case Theorem::RbfRbf:
        a = rng.uniform(-1.0, 1.0);
        do b = rng.uniform(-1.0, 1.0); while (std::abs(a - b) < opt.min_gap);
        break;
      case Theorem::LogRbfToRbf:
        a = rng.uniform(-1.0, 0.5);
        b = a + rng.uniform(opt.min_gap, opt.min_gap + 1.0);
        break;
      case Theorem::LogRbfToZero:
        a = rng.uniform(-0.5, 1.0);
        b = a - rng.uniform(opt.min_gap, opt.min_gap + 1.0);
        break;
    }
    cfg.first.params.emplace_back(a, rng.uniform(0.5, 2.0));
    cfg.second.params.emplace_back(b, rng.uniform(0.5, 2.0));
  }

  static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13};
  if (cfg.m > 6) throw ConfigError("theorem suite supports m <= 6");
  const double lo = -2.5, hi = 2.5;
  const std::uint64_t offset = static_cast<std::uint64_t>(id) * 7919;
  const std::uint64_t cap = 100 * static_cast<std::uint64_t>(std::max(opt.samples, 1));
  for (std::uint64_t k = 0; static_cast<int>(cfg.samples.size()) < opt.samples && k < cap; ++k) {
    Eigen::VectorXd y(cfg.m);
    bool ok = true;
    for (int i = 0; i < cfg.m && ok; ++i) {
      y[i] = lo + (hi - lo) * halton(offset + k, kPrimes[i]);
      ok = std::abs(y[i] - cfg.first.params[i].center()) >= opt.exclusion &&
           std::abs(y[i] - cfg.second.params[i].center()) >= opt.exclusion;
    }
    if (ok) cfg.samples.push_back(std::move(y));
  }
  if (cfg.samples.empty()) throw ConfigError("exclusion band leaves no sample points");
  return cfg;
}

SweepResult run_sweep(const TheoremConfig& cfg, const std::vector<double>& alphas,
                      HCaseSplit rule) {
  SweepResult out;
  out.theorem = cfg.theorem;
  out.config_id = cfg.id;
  out.m = cfg.m;
  out.alphas = alphas;
  const auto pair = product_pair(cfg.theorem);
  for (double alpha : alphas) {
    double log_sup = -std::numeric_limits<double>::infinity(), sum = 0.0;
    for (const auto& y : cfg.samples) {
      const double le = log_product_error(pair, y, cfg.first, cfg.second, alpha, rule);
      log_sup = std::max(log_sup, le);
      sum += std::exp(le);
    }
    out.log_sup_errors.push_back(log_sup);
    out.sup_errors.push_back(std::exp(log_sup));
    out.mean_errors.push_back(sum / static_cast<double>(cfg.samples.size()));
  }
  out.fit = convergence_rate_log(out.alphas, out.log_sup_errors);
  return out;
}

std::vector<SweepResult> theorem_suite(Theorem t, const SuiteOptions& opt) {
  std::vector<SweepResult> out(static_cast<std::size_t>(std::max(opt.configs, 0)));
  parallel_for(out.size(), opt.workers, [&](std::size_t k) {
    out[k] = run_sweep(random_theorem_config(t, static_cast<int>(k), opt), opt.alpha_scales);
  });
  return out;
}

namespace {

void accumulate(GapStats& s, double gap) {
  s.sup = std::max(s.sup, gap);
  s.mean += gap;
}

}  // namespace

std::vector<MemberClosureError> lie_closure_error(const Dictionary& d,
                                                  const Eigen::MatrixXd& weights,
                                                  const std::vector<Eigen::VectorXd>& samples,
                                                  HCaseSplit rule) {
  if (d.family() != DictionaryFamily::SILL && d.family() != DictionaryFamily::AugSILL)
    throw UnsupportedFamilyError("closure analysis needs a SILL or augSILL dictionary");
  const int m = d.m();
  const int n = d.size();
  const int nl = d.n_logistic();
  if (weights.rows() != m || weights.cols() != n) throw ShapeError("weights must be m x N");
  const auto& members = d.conjunctive();
  for (const auto& y : samples)
    for (const auto& f : members) check_hypothesis(y, f, 1e-3);

  // Limits that do not depend on the sample point.
  std::vector<std::vector<ConjunctiveFunction>> star(static_cast<std::size_t>(nl));
  for (int l = 0; l < nl; ++l)
    for (int j = 0; j < nl; ++j) star[l].push_back(theta_star(members[l], members[j]));
  std::vector<std::vector<bool>> selects(static_cast<std::size_t>(nl),
                                         std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int l = 0; l < nl; ++l)
    for (int k = nl; k < n; ++k) selects[l][k] = h_selects_rbf(members[l], members[k], rule);

  std::vector<MemberClosureError> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    out[j].member = j;
    out[j].kind = members[j].kind;
  }

  Eigen::VectorXd vals(n);
  for (const auto& y : samples) {
    for (int j = 0; j < n; ++j) vals[j] = eval_conjunctive(members[j], y);
    const Eigen::VectorXd F = weights * vals;

    for (int l = 0; l < n; ++l) {
      const auto& f = members[l];
      const bool logistic = f.kind == BasisKind::Logistic;
      // Per-dimension linear combination of the limits of the products with member l.
      Eigen::VectorXd limit_sum = Eigen::VectorXd::Zero(m);
      for (int i = 0; i < m; ++i) {
        double s = 0.0;
        if (logistic) {
          for (int j = 0; j < nl; ++j) s += weights(i, j) * eval_conjunctive(star[l][j], y);
          for (int k = nl; k < n; ++k)
            if (selects[l][k]) s += weights(i, k) * vals[k];
        } else {
          for (int j = 0; j < nl; ++j)
            if (selects[j][l]) s += weights(i, j) * vals[l];
        }
        limit_sum[i] = s;
      }
      double exact = 0.0, limit = 0.0, linear = 0.0, product = 0.0;
      for (int i = 0; i < m; ++i) {
        const auto& p = f.params[i];
        const auto lp = logistic_pair(p.steepness() * (y[i] - p.center()));
        const double factor = logistic ? lp.complement : lp.complement - lp.value;
        exact += p.steepness() * factor * vals[l] * F[i];
        limit += p.steepness() * factor * limit_sum[i];
        linear += p.steepness() * limit_sum[i];
        product += p.steepness() * vals[l] * F[i];
      }
      accumulate(out[l].exact_vs_limit, std::abs(exact - limit));
      accumulate(out[l].limit_vs_linear, std::abs(limit - linear));
      accumulate(out[l].exact_vs_product, std::abs(exact - product));
      accumulate(out[l].product_vs_linear, std::abs(product - linear));
      accumulate(out[l].exact_vs_linear, std::abs(exact - linear));
    }
  }
  if (!samples.empty())
    for (auto& e : out)
      for (GapStats* s : {&e.exact_vs_limit, &e.limit_vs_linear, &e.exact_vs_product,
                          &e.product_vs_linear, &e.exact_vs_linear})
        s->mean /= static_cast<double>(samples.size());
  return out;
}

double error_bound(const ErrorBoundParams& params, BoundRow row) {
  const int n = params.n_logistic + params.n_rbf;
  if (params.m < 1 || params.n_logistic < 0 || params.n_rbf < 0)
    throw DomainError("invalid bound dimensions");
  if (params.nu.rows() != params.m || params.nu.cols() != n)
    throw ShapeError("nu must be m x (N_L + N_R)");
  if ((params.nu.array() < 0.0).any() || !params.nu.allFinite())
    throw DomainError("nu entries must be finite and nonnegative");
  const double m = params.m;
  const double log_sum = params.nu.leftCols(params.n_logistic).sum();
  const double rbf_sum = params.nu.rightCols(params.n_rbf).sum();
  switch (row) {
    case BoundRow::LogisticLimit:
      return log_sum / std::exp2(m + 1) + rbf_sum / std::exp2(3 * m + 1);
    case BoundRow::LogisticProduct:
      return log_sum / std::exp2(2 * m + 1) + rbf_sum / std::exp2(3 * m + 1);
    case BoundRow::RbfLimit:
      return log_sum / std::exp2(3 * m + 1);
    case BoundRow::RbfProduct:
      return log_sum / std::exp2(3 * m + 1) + rbf_sum / std::exp2(4 * m + 1);
  }
  throw ConfigError("unknown bound row");
}

ErrorBoundParams matched_bound_params(const Dictionary& d, const Eigen::MatrixXd& weights,
                                      int member) {
  if (member < 0 || member >= d.size()) throw ShapeError("member index out of range");
  if (weights.rows() != d.m() || weights.cols() != d.size()) throw ShapeError("weights must be m x N");
  ErrorBoundParams p;
  p.m = d.m();
  p.n_logistic = d.n_logistic();
  p.n_rbf = d.n_rbf();
  p.nu.resize(d.m(), d.size());
  for (int i = 0; i < d.m(); ++i)
    for (int j = 0; j < d.size(); ++j)
      p.nu(i, j) = std::abs(d.steepness(member, i) * weights(i, j));
  return p;
}

Dictionary scaled_dictionary(const Dictionary& d, double scale) {
  if (d.family() != DictionaryFamily::SILL && d.family() != DictionaryFamily::AugSILL)
    throw UnsupportedFamilyError("only conjunctive dictionaries can be rescaled");
  std::vector<ConjunctiveFunction> logistic, rbf;
  for (const auto& f : d.conjunctive())
    (f.kind == BasisKind::Logistic ? logistic : rbf).push_back(scaled(f, scale));
  if (d.family() == DictionaryFamily::SILL) return Dictionary::sill(d.m(), std::move(logistic));
  return Dictionary::aug_sill(d.m(), std::move(logistic), std::move(rbf));
}

LieFixture random_lie_fixture(int m, int n_logistic, int n_rbf, std::uint64_t seed, int samples,
                              double min_gap) {
  if (m < 1 || m > 6) throw DomainError("fixture dimension must be in 1..6");
  if (n_logistic < 0 || n_rbf < 0 || n_logistic + n_rbf < 1)
    throw DomainError("fixture needs at least one member");
  const int n = n_logistic + n_rbf;
  if (min_gap * (n - 1) > 2.0) throw DomainError("center gap too large for [-1, 1]");
  Rng rng(seed, static_cast<std::uint64_t>(m), 0x11E);
  std::vector<std::vector<double>> centers(static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i) {
    std::vector<double> placed;
    while (static_cast<int>(placed.size()) < n) {
      const double c = rng.uniform(-1.0, 1.0);
      bool ok = true;
      for (double p : placed) ok = ok && std::abs(c - p) >= min_gap;
      if (ok) placed.push_back(c);
    }
    for (int j = 0; j < n; ++j) centers[j].push_back(placed[j]);
  }
  std::vector<ConjunctiveFunction> logistic, rbf;
  for (int j = 0; j < n; ++j) {
    ConjunctiveFunction f{j < n_logistic ? BasisKind::Logistic : BasisKind::Rbf, {}};
    for (int i = 0; i < m; ++i) f.params.emplace_back(centers[j][i], rng.uniform(0.5, 2.0));
    (j < n_logistic ? logistic : rbf).push_back(std::move(f));
  }
  LieFixture out;
  out.dictionary = Dictionary::aug_sill(m, std::move(logistic), std::move(rbf));
  out.weights.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) out.weights(i, j) = rng.uniform(-1.0, 1.0);

  static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13};
  const std::uint64_t cap = 100 * static_cast<std::uint64_t>(std::max(samples, 1));
  for (std::uint64_t k = 0; static_cast<int>(out.samples.size()) < samples && k < cap; ++k) {
    Eigen::VectorXd y(m);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      y[i] = -2.5 + 5.0 * halton(k, kPrimes[i]);
      for (int j = 0; j < n && ok; ++j) ok = std::abs(y[i] - centers[j][i]) >= min_gap;
    }
    if (ok) out.samples.push_back(std::move(y));
  }
  if (out.samples.empty()) throw ConfigError("exclusion band leaves no sample points");
  return out;
}

std::vector<BoundCheck> bound_check(int m, int n_logistic, int n_rbf, double a, int draws,
                                    std::uint64_t seed, HCaseSplit rule) {
  if (m < 1) throw DomainError("m must be positive");
  if (n_logistic < 1 || n_rbf < 1) throw DomainError("bound check needs both member kinds");
  if (!(a > 0.0)) throw DomainError("a must be positive");
  if (draws < 2) throw DomainError("need at least two draws");
  const int n = n_logistic + n_rbf;
  // sums of error, error^2 and bound for each of the four rows
  std::array<std::array<double, 3>, 4> acc{};
  Rng rng(seed, static_cast<std::uint64_t>(m), 0xB0);
  for (int draw = 0; draw < draws; ++draw) {
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) y[i] = rng.uniform(-a, a);
    std::vector<ConjunctiveFunction> logistic, rbf;
    for (int j = 0; j < n; ++j) {
      ConjunctiveFunction f{j < n_logistic ? BasisKind::Logistic : BasisKind::Rbf, {}};
      for (int i = 0; i < m; ++i) {
        double c;
        do c = rng.uniform(-a, a); while (std::abs(y[i] - c) < 1e-3);
        f.params.emplace_back(c, a * (1.0 - rng.uniform()));
      }
      (j < n_logistic ? logistic : rbf).push_back(std::move(f));
    }
    const Dictionary d = Dictionary::aug_sill(m, std::move(logistic), std::move(rbf));
    Eigen::MatrixXd w(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) w(i, j) = rng.uniform(-1.0, 1.0);
    const auto gaps = lie_closure_error(d, w, {y}, rule);

    std::array<double, 4> err{}, bound{};
    for (int l = 0; l < n; ++l) {
      const auto params = matched_bound_params(d, w, l);
      const bool is_log = l < n_logistic;
      const int limit_row = is_log ? 0 : 2;
      err[limit_row] += gaps[l].limit_vs_linear.mean;
      err[limit_row + 1] += gaps[l].exact_vs_product.mean;
      bound[limit_row] += error_bound(params, is_log ? BoundRow::LogisticLimit : BoundRow::RbfLimit);
      bound[limit_row + 1] +=
          error_bound(params, is_log ? BoundRow::LogisticProduct : BoundRow::RbfProduct);
    }
    for (int r = 0; r < 4; ++r) {
      const double members = r < 2 ? n_logistic : n_rbf;
      const double e = err[r] / members;
      acc[r][0] += e;
      acc[r][1] += e * e;
      acc[r][2] += bound[r] / members;
    }
  }
  std::vector<BoundCheck> out;
  const double k = draws;
  for (int r = 0; r < 4; ++r) {
    BoundCheck c;
    c.row = static_cast<BoundRow>(r + 1);
    c.m = m;
    c.mean_error = acc[r][0] / k;
    c.std_error = std::sqrt(std::max(0.0, (acc[r][1] - k * c.mean_error * c.mean_error) / (k - 1.0)) / k);
    c.mean_bound = acc[r][2] / k;
    out.push_back(c);
  }
  return out;
}

std::vector<double> logspace(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > 0.0) || count < 2) throw DomainError("logspace needs positive ends");
  std::vector<double> out;
  for (int k = 0; k < count; ++k)
    out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (count - 1.0)));
  return out;
}

std::vector<ExplosionRow> polynomial_explosion_demo(int degree, const std::vector<double>& y_values,
                                                    int samples) {
  if (degree < 1) throw DomainError("degree must be at least 1");
  if (samples < degree + 2) throw DomainError("too few samples for the requested degree");
  std::vector<ExplosionRow> out;
  for (double Y : y_values) {
    if (!(Y > 1.0) || !std::isfinite(Y)) throw DomainError("y values must exceed 1");
    // Work in s = y / Y, where the monomial span is unchanged and well scaled.
    Eigen::MatrixXd X(samples, degree + 1);
    Eigen::VectorXd target(samples);
    for (int t = 0; t < samples; ++t) {
      const double y = 1.0 + (Y - 1.0) * t / (samples - 1.0);
      const double s = y / Y;
      for (int k = 0; k <= degree; ++k) X(t, k) = std::pow(s, k);
      target[t] = std::pow(s, degree + 1);
    }
    const Eigen::VectorXd coef = X.completeOrthogonalDecomposition().solve(target);
    const double rms = (target - X * coef).norm() / std::sqrt(static_cast<double>(samples));
    out.push_back({Y, degree * std::pow(Y, degree + 1) * rms});
  }
  return out;
}

double explosion_exponent(const std::vector<ExplosionRow>& rows) {
  if (rows.size() < 2) throw DomainError("need at least two rows");
  double mx = 0.0, my = 0.0;
  for (const auto& r : rows) {
    if (!(r.residual > 0.0)) throw DomainError("residuals must be positive");
    mx += std::log(r.y);
    my += std::log(r.residual);
  }
  mx /= static_cast<double>(rows.size());
  my /= static_cast<double>(rows.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& r : rows) {
    sxx += (std::log(r.y) - mx) * (std::log(r.y) - mx);
    sxy += (std::log(r.y) - mx) * (std::log(r.residual) - my);
  }
  return sxy / sxx;
}

ConjunctiveMeans conjunctive_means(int m, double a, int samples, std::uint64_t seed,
                                   HCaseSplit rule) {
  if (m < 1) throw DomainError("m must be positive");
  if (!(a > 0.0)) throw DomainError("a must be positive");
  if (samples < 2) throw DomainError("need at least two samples");
  constexpr int kBatch = 10000;
  const int batches = (samples + kBatch - 1) / kBatch;
  std::vector<std::array<double, 6>> partial(static_cast<std::size_t>(batches));
  parallel_for(partial.size(), 1, [&](std::size_t b) {
    Rng rng(seed, b, 0xC0);
    std::array<double, 6> acc{};
    const int count = std::min(kBatch, samples - static_cast<int>(b) * kBatch);
    Eigen::VectorXd y(m);
    for (int s = 0; s < count; ++s) {
      ConjunctiveFunction l{BasisKind::Logistic, {}}, k{BasisKind::Rbf, {}};
      for (int i = 0; i < m; ++i) {
        y[i] = rng.uniform(-a, a);
        // steepness is |U(-a, a)|, kept away from 0
        const double cl = rng.uniform(-a, a), al = a * (1.0 - rng.uniform());
        const double ck = rng.uniform(-a, a), ak = a * (1.0 - rng.uniform());
        l.params.emplace_back(cl, al);
        k.params.emplace_back(ck, ak);
      }
      const double vl = eval_conjunctive(l, y);
      const double vk = eval_conjunctive(k, y);
      const double vh = h_selects_rbf(l, k, rule) ? vk : 0.0;
      acc[0] += vl;
      acc[1] += vl * vl;
      acc[2] += vk;
      acc[3] += vk * vk;
      acc[4] += vh;
      acc[5] += vh * vh;
    }
    partial[b] = acc;
  });
  std::array<double, 6> total{};
  for (const auto& p : partial)
    for (std::size_t q = 0; q < 6; ++q) total[q] += p[q];
  const double n = samples;
  auto estimate = [&](double sum, double sum_sq) {
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return MeanEstimate{mean, std::sqrt(var / n)};
  };
  ConjunctiveMeans out;
  out.m = m;
  out.logistic = estimate(total[0], total[1]);
  out.rbf = estimate(total[2], total[3]);
  out.h = estimate(total[4], total[5]);
  return out;
}

}  // namespace augsill
