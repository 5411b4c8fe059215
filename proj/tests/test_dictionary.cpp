#include <doctest.h>

#include <cmath>
#include <limits>

#include "augsill/dictionary.hpp"
#include "augsill/dictionary_io.hpp"
#include "augsill/errors.hpp"
#include "augsill/random.hpp"
#include "augsill/trainer.hpp"
#include "oracle.hpp"

using namespace augsill;

namespace {

const DictionaryFamily kAllFamilies[] = {DictionaryFamily::SILL, DictionaryFamily::AugSILL,
                                         DictionaryFamily::SummedRbf, DictionaryFamily::Legendre,
                                         DictionaryFamily::Hermite};

Dictionary fixture(DictionaryFamily family, int m, int N, std::uint64_t seed) {
  std::vector<std::pair<double, double>> box(static_cast<std::size_t>(m), {-1.5, 1.5});
  return random_dictionary(family, m, N, box, seed);
}

Eigen::VectorXd random_point(Rng& rng, int m, double lo = -2.0, double hi = 2.0) {
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) y[i] = rng.uniform(lo, hi);
  return y;
}

}  // namespace

TEST_CASE("scalar basis values at and away from the center") {
  for (double alpha : {0.1, 1.0, 37.0}) {
    CHECK(eval_scalar_basis(BasisKind::Logistic, 0.4, {0.4, alpha}) == 0.5);
    CHECK(eval_scalar_basis(BasisKind::Rbf, 0.4, {0.4, alpha}) == 0.25);
  }
  const double expected = static_cast<double>(oracle::logistic(2.0L));
  CHECK(eval_scalar_basis(BasisKind::Logistic, 1.0, {0.0, 2.0}) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(expected == doctest::Approx(0.880797).epsilon(1e-6));
}

TEST_CASE("scalar basis is overflow safe for huge exponents") {
  for (double x : {-1e6, -800.0, 800.0, 1e6}) {
    const double l = eval_scalar_basis(BasisKind::Logistic, x, {0.0, 1.0});
    const double r = eval_scalar_basis(BasisKind::Rbf, x, {0.0, 1.0});
    CHECK(std::isfinite(l));
    CHECK(std::isfinite(r));
    CHECK(l >= 0.0);
    CHECK(l <= 1.0);
    CHECK(r >= 0.0);
    CHECK(r <= 0.25);
  }
  CHECK(log_logistic(-1e6) == doctest::Approx(-1e6));
}

TEST_CASE("scalar basis rejects bad parameters") {
  CHECK_THROWS_AS(ScalarBasisParams(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(ScalarBasisParams(0.0, -1.0), DomainError);
  CHECK_THROWS_AS(ScalarBasisParams(std::nan(""), 1.0), DomainError);
  CHECK_THROWS_AS(eval_scalar_basis(BasisKind::Logistic, std::numeric_limits<double>::infinity(),
                                    {0.0, 1.0}),
                  DomainError);
}

TEST_CASE("conjunctive functions at their centers") {
  const Eigen::Vector3d mu(0.3, -1.0, 2.0);
  CHECK(eval_conjunctive(ConjunctiveFunction::uniform(BasisKind::Logistic, mu, 1.7), mu) == 0.125);
  const Eigen::Vector2d mu2(0.5, -0.5);
  CHECK(eval_conjunctive(ConjunctiveFunction::uniform(BasisKind::Rbf, mu2, 3.0), mu2) == 0.0625);
  CHECK_THROWS_AS(eval_conjunctive(ConjunctiveFunction::uniform(BasisKind::Rbf, mu2, 3.0), mu),
                  ShapeError);
}

TEST_CASE("conjunctive RBF is the product of lambda minus lambda squared") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(3));
    ConjunctiveFunction f{BasisKind::Rbf, {}};
    for (int i = 0; i < m; ++i) f.params.emplace_back(rng.uniform(-2, 2), rng.uniform(0.2, 5));
    const Eigen::VectorXd y = random_point(rng, m);
    double product = 1.0;
    for (int i = 0; i < m; ++i) {
      const double l = eval_scalar_basis(BasisKind::Logistic, y[i], f.params[i]);
      product *= l - l * l;
    }
    CHECK(eval_conjunctive(f, y) == doctest::Approx(product).epsilon(1e-12));
  }
}

TEST_CASE("rho equals lambda - lambda^2 at 1000 random points") {
  Rng rng(5);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const ScalarBasisParams p(rng.uniform(-3, 3), rng.uniform(0.1, 10));
    const double y = rng.uniform(-3, 3);
    const double l = eval_scalar_basis(BasisKind::Logistic, y, p);
    worst = std::max(worst, std::abs(eval_scalar_basis(BasisKind::Rbf, y, p) - (l - l * l)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("conjunctive ranges and grid maxima at the center") {
  Rng rng(3);
  for (int m = 1; m <= 2; ++m) {
    Eigen::VectorXd mu(m);
    for (int i = 0; i < m; ++i) mu[i] = rng.uniform(-1, 1);
    const auto lf = ConjunctiveFunction::uniform(BasisKind::Logistic, mu, 2.0);
    const auto rf = ConjunctiveFunction::uniform(BasisKind::Rbf, mu, 2.0);
    double best = -1.0;
    Eigen::VectorXd arg(m);
    const int n = 41;
    const int total = m == 1 ? n : n * n;
    for (int g = 0; g < total; ++g) {
      Eigen::VectorXd y(m);
      int rest = g;
      for (int i = 0; i < m; ++i) {
        y[i] = mu[i] - 2.0 + 4.0 * (rest % n) / (n - 1.0);
        rest /= n;
      }
      const double lv = eval_conjunctive(lf, y);
      const double rv = eval_conjunctive(rf, y);
      CHECK(lv > 0.0);
      CHECK(lv < 1.0);
      CHECK(rv > 0.0);
      CHECK(rv <= std::pow(4.0, -m));
      if (rv > best) {
        best = rv;
        arg = y;
      }
    }
    CHECK((arg - mu).cwiseAbs().maxCoeff() < 4.0 / 40.0);
    CHECK(best == doctest::Approx(std::pow(4.0, -m)));
  }
}

TEST_CASE("ordered centers give ordered conjunctive logistics") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(3));
    ConjunctiveFunction lo{BasisKind::Logistic, {}}, hi{BasisKind::Logistic, {}};
    for (int i = 0; i < m; ++i) {
      const double a = rng.uniform(0.2, 4);
      const double c = rng.uniform(-2, 2);
      lo.params.emplace_back(c, a);
      hi.params.emplace_back(c + rng.uniform(0, 1), a);
    }
    const Eigen::VectorXd y = random_point(rng, m, -3, 3);
    CHECK(eval_conjunctive(lo, y) >= eval_conjunctive(hi, y));
  }
}

TEST_CASE("lift examples") {
  const Eigen::Vector2d y(0.3, -0.7);
  const Eigen::VectorXd z = lift(Dictionary::sill(2, {}), y);
  REQUIRE(z.size() == 3);
  CHECK(z[0] == 1.0);
  CHECK(z[1] == 0.3);
  CHECK(z[2] == -0.7);

  const auto aug = Dictionary::aug_sill(1, {ConjunctiveFunction::uniform(BasisKind::Logistic, Eigen::VectorXd::Zero(1), 1.0)},
                                        {ConjunctiveFunction::uniform(BasisKind::Rbf, Eigen::VectorXd::Zero(1), 1.0)});
  const Eigen::VectorXd za = lift(aug, Eigen::VectorXd::Zero(1));
  CHECK(za.size() == 4);
  CHECK(za[0] == 1.0);
  CHECK(za[1] == 0.0);
  CHECK(za[2] == 0.5);
  CHECK(za[3] == 0.25);

  const auto herm = Dictionary::polynomial(DictionaryFamily::Hermite, 1, 2);
  const Eigen::VectorXd zh = lift(herm, Eigen::VectorXd::Constant(1, 0.5));
  CHECK(zh.size() == 4);
  CHECK(zh[2] == doctest::Approx(static_cast<double>(oracle::hermite(2, 0.5L))).epsilon(1e-15));
  CHECK(zh[3] == doctest::Approx(static_cast<double>(oracle::hermite(3, 0.5L))).epsilon(1e-15));
  CHECK(zh[2] == doctest::Approx(-1.0));
  CHECK(zh[3] == doctest::Approx(-5.0));
}

TEST_CASE("lift layout and agreement with the long double oracle") {
  Rng rng(23);
  for (auto family : kAllFamilies)
    for (int m = 1; m <= 3; ++m) {
      const Dictionary d = fixture(family, m, 7, 100 + m);
      for (int k = 0; k < 20; ++k) {
        const Eigen::VectorXd y = random_point(rng, m);
        const Eigen::VectorXd z = lift(d, y);
        REQUIRE(z.size() == 1 + m + 7);
        CHECK(z[0] == 1.0);
        for (int i = 0; i < m; ++i) CHECK(z[1 + i] == y[i]);
        const oracle::VecL ref = oracle::lift(d, y.cast<long double>());
        for (Eigen::Index r = 0; r < z.size(); ++r)
          CHECK(oracle::rel_error(z[r], ref[r], 1e-12L) < 1e-12);
      }
      CHECK_THROWS_AS(lift(d, Eigen::VectorXd::Zero(m + 1)), ShapeError);
    }
}

TEST_CASE("lift_rows matches lift row by row") {
  const Dictionary d = fixture(DictionaryFamily::AugSILL, 2, 6, 1);
  Eigen::MatrixXd states(3, 2);
  states << 0.1, 0.2, -1.0, 0.5, 2.0, -2.0;
  const Eigen::MatrixXd Z = lift_rows(d, states);
  for (int r = 0; r < 3; ++r) CHECK((Z.row(r).transpose() - lift(d, states.row(r).transpose())).norm() == 0.0);
}

TEST_CASE("polynomial multi-index order") {
  const auto idx = polynomial_multi_indices(2, 7);
  const std::vector<MultiIndex> expected{{2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};
  CHECK(idx == expected);
  const auto one = polynomial_multi_indices(1, 3);
  CHECK(one == std::vector<MultiIndex>{{2}, {3}, {4}});
  for (const auto& i : polynomial_multi_indices(3, 30)) CHECK(total_degree(i) >= 2);
}

TEST_CASE("polynomial derivatives match the recurrence oracle") {
  for (auto kind : {PolynomialKind::Legendre, PolynomialKind::Hermite})
    for (double x : {-1.7, -0.3, 0.0, 0.9, 2.2}) {
      std::vector<double> v, dv;
      polynomial_values_and_derivatives(kind, 8, x, v, dv);
      for (int k = 0; k <= 8; ++k) {
        auto p = [&](long double t) {
          return kind == PolynomialKind::Legendre ? oracle::legendre(k, t) : oracle::hermite(k, t);
        };
        const long double h = 1e-6L;
        const long double fd = (p(x + h) - p(x - h)) / (2 * h);
        CHECK(oracle::rel_error(v[k], p(x)) < 1e-13);
        CHECK(oracle::rel_error(dv[k], fd) < 1e-6);
      }
    }
}

TEST_CASE("lift_jacobian structure and closed form example") {
  const auto d = Dictionary::sill(1, {ConjunctiveFunction::uniform(BasisKind::Logistic, Eigen::VectorXd::Zero(1), 1.0)});
  const Eigen::MatrixXd J = lift_jacobian(d, Eigen::VectorXd::Zero(1));
  CHECK(J.rows() == 3);
  CHECK(J(0, 0) == 0.0);
  CHECK(J(1, 0) == 1.0);
  CHECK(J(2, 0) == doctest::Approx(0.25).epsilon(1e-15));

  for (auto family : kAllFamilies) {
    const Dictionary dd = fixture(family, 3, 5, 9);
    const Eigen::MatrixXd JJ = lift_jacobian(dd, Eigen::Vector3d(0.2, -0.4, 1.1));
    CHECK(JJ.row(0).isZero(0.0));
    CHECK(JJ.block(1, 0, 3, 3) == Eigen::Matrix3d::Identity());
  }
}

TEST_CASE("lift_jacobian matches central differences for every family") {
  Rng rng(2024);
  for (auto family : kAllFamilies)
    for (int m = 1; m <= 3; ++m) {
      const Dictionary d = fixture(family, m, 8, 7 * m);
      double worst = 0.0;
      for (int k = 0; k < 100; ++k) {
        const Eigen::VectorXd y = random_point(rng, m);
        const Eigen::MatrixXd J = lift_jacobian(d, y);
        const oracle::MatL fd = oracle::fd_jacobian(d, y);
        for (Eigen::Index r = 0; r < J.rows(); ++r)
          for (Eigen::Index c = 0; c < J.cols(); ++c)
            worst = std::max(worst, oracle::rel_error(J(r, c), fd(r, c)));
      }
      INFO(to_string(family), " m=", m);
      CHECK(worst < 1e-5);
    }
}

TEST_CASE("param_gradients closed form examples") {
  const auto d = Dictionary::sill(1, {ConjunctiveFunction::uniform(BasisKind::Logistic, Eigen::VectorXd::Zero(1), 1.0)});
  const ParamGradients g = param_gradients(d, Eigen::VectorXd::Ones(1));
  CHECK(g.d_center(0, 0) == doctest::Approx(-0.19661).epsilon(1e-4));
  const double l = 1.0 / (1.0 + std::exp(-1.0));
  CHECK(g.d_center(0, 0) == doctest::Approx(-l * (1.0 - l)).epsilon(1e-14));

  const Eigen::Vector2d mu(0.3, -0.2);
  const auto at_center = Dictionary::aug_sill(2, {ConjunctiveFunction::uniform(BasisKind::Logistic, mu, 2.0)},
                                              {ConjunctiveFunction::uniform(BasisKind::Rbf, mu, 2.0)});
  const ParamGradients gc = param_gradients(at_center, mu);
  CHECK(gc.d_steepness.isZero(0.0));

  CHECK_THROWS_AS(param_gradients(Dictionary::polynomial(DictionaryFamily::Legendre, 2, 3), mu),
                  UnsupportedFamilyError);
}

TEST_CASE("param_gradients match central differences") {
  Rng rng(77);
  for (auto family : {DictionaryFamily::SILL, DictionaryFamily::AugSILL, DictionaryFamily::SummedRbf})
    for (int m = 1; m <= 3; ++m) {
      const Dictionary d = fixture(family, m, 8, 31 * m);
      double worst = 0.0;
      for (int k = 0; k < 100; ++k) {
        const Eigen::VectorXd y = random_point(rng, m);
        const ParamGradients g = param_gradients(d, y);
        const oracle::ParamFd fd = oracle::fd_params(d, y);
        for (int j = 0; j < d.size(); ++j)
          for (int i = 0; i < m; ++i) {
            worst = std::max(worst, oracle::rel_error(g.d_center(j, i), fd.d_center(j, i)));
            worst = std::max(worst, oracle::rel_error(g.d_steepness(j, i), fd.d_steepness(j, i)));
          }
      }
      INFO(to_string(family), " m=", m);
      CHECK(worst < 1e-5);
    }
}

TEST_CASE("h_function branches") {
  const auto l0 = ConjunctiveFunction::uniform(BasisKind::Logistic, Eigen::Vector2d(0, 0), 1.0);
  const auto k1 = ConjunctiveFunction::uniform(BasisKind::Rbf, Eigen::Vector2d(1, 1), 1.0);
  CHECK(h_function(Eigen::Vector2d(1, 1), l0, k1) == doctest::Approx(1.0 / 16.0));

  const auto l1 = ConjunctiveFunction::uniform(BasisKind::Logistic, Eigen::Vector2d(1, 1), 1.0);
  const auto k0 = ConjunctiveFunction::uniform(BasisKind::Rbf, Eigen::Vector2d(0, 0), 1.0);
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const Eigen::VectorXd y = random_point(rng, 2);
    CHECK(h_function(y, l1, k0) == 0.0);
    CHECK(h_function(y, l1, k0, HCaseSplit::AnyDimension) == 0.0);
  }

  const auto mixed = ConjunctiveFunction::uniform(BasisKind::Logistic, Eigen::Vector2d(0, 2), 1.0);
  const Eigen::Vector2d y(0.4, 1.3);
  CHECK(h_function(y, mixed, k1, HCaseSplit::AnyDimension) == eval_conjunctive(k1, y));
  CHECK(h_function(y, mixed, k1, HCaseSplit::Orthant) == 0.0);
  CHECK_THROWS_AS(h_function(Eigen::Vector3d::Zero(), l0, k1), ShapeError);
}

TEST_CASE("packed parameters round trip") {
  Dictionary d = fixture(DictionaryFamily::AugSILL, 2, 5, 3);
  const Eigen::VectorXd p = d.packed_parameters();
  CHECK(p.size() == 20);
  CHECK(p[1] == doctest::Approx(std::log(d.steepness(0, 0))));
  Dictionary e = d;
  e.set_packed_parameters(p);
  CHECK(e.packed_parameters() == p);
  CHECK(Dictionary::polynomial(DictionaryFamily::Hermite, 2, 4).packed_parameters().size() == 0);
}

TEST_CASE("dictionary text form round trips exactly") {
  for (auto family : kAllFamilies)
    for (int m = 1; m <= 3; ++m) {
      const Dictionary d = fixture(family, m, 6, 5 + m);
      const std::string text = dictionary_to_ini(d);
      CHECK(text.find("[dictionary]") != std::string::npos);
      CHECK(text.find("[member_5]") != std::string::npos);
      const Dictionary back = dictionary_from_ini(text);
      CHECK(back == d);
      CHECK(dictionary_to_ini(back) == text);
    }
  CHECK_THROWS_AS(dictionary_from_ini("[dictionary]\nfamily=sill\n"), DataError);
  CHECK_THROWS_AS(dictionary_from_ini("[dictionary]\nfamily=sill\nm=1\nN=1\nN_L=1\nN_R=0\n"
                                      "[member_0]\nkind=logistic\ncenters=0\nsteepnesses=-1\n"),
                  DataError);
}

TEST_CASE("family names") {
  for (auto family : kAllFamilies) CHECK(dictionary_family_from_string(to_string(family)) == family);
  CHECK_THROWS_AS(dictionary_family_from_string("chebyshev"), ConfigError);
  CHECK(has_shape_parameters(DictionaryFamily::SummedRbf));
  CHECK_FALSE(has_shape_parameters(DictionaryFamily::Legendre));
}

TEST_CASE("augSILL member order and split") {
  const Dictionary d = fixture(DictionaryFamily::AugSILL, 2, 7, 1);
  CHECK(d.n_logistic() == 4);
  CHECK(d.n_rbf() == 3);
  for (int j = 0; j < 7; ++j)
    CHECK(d.conjunctive()[j].kind == (j < 4 ? BasisKind::Logistic : BasisKind::Rbf));
}
