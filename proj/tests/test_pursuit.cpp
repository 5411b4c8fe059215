#include <doctest.h>

#include <cmath>
#include <set>

#include "augsill/errors.hpp"
#include "augsill/trainer.hpp"
#include "oracle.hpp"

using namespace augsill;

namespace {

SnapshotDataset system_data(SystemId id, int trajectories = 6) {
  SimulationConfig sim;
  sim.trajectories = trajectories;
  return build_snapshot_dataset(simulate(SystemSpec::standard(id), sim), DataMode::DiscretePairs);
}

/// Squared residual of [1, y'] (or [0, dy/dt]) regressed on [1, y, picks],
/// solved independently with a Householder QR.
double measurement_residual(const SnapshotDataset& data, const PursuitPool& pool,
                            const std::vector<std::size_t>& picks) {
  const Eigen::Index r = data.rows();
  const int m = data.m();
  Eigen::MatrixXd A(r, 1 + m + static_cast<Eigen::Index>(picks.size()));
  A.col(0).setOnes();
  A.middleCols(1, m) = data.inputs;
  for (std::size_t k = 0; k < picks.size(); ++k) {
    const auto f = pool.candidate(picks[k]);
    for (Eigen::Index t = 0; t < r; ++t)
      A(t, 1 + m + static_cast<Eigen::Index>(k)) = eval_conjunctive(f, data.inputs.row(t).transpose());
  }
  Eigen::MatrixXd B(r, 1 + m);
  B.col(0).setConstant(data.mode == DataMode::DiscretePairs ? 1.0 : 0.0);
  B.rightCols(m) = data.targets;
  const Eigen::MatrixXd X = A.colPivHouseholderQr().solve(B);
  return (B - A * X).squaredNorm();
}

SnapshotDataset planted_data() {
  SnapshotDataset d;
  d.mode = DataMode::ContinuousDerivatives;
  d.dt = 0.1;
  const int n = 81;
  d.inputs.resize(n, 1);
  d.targets.resize(n, 1);
  for (int k = 0; k < n; ++k) {
    const double y = -2.0 + 4.0 * k / (n - 1.0);
    d.inputs(k, 0) = y;
    d.targets(k, 0) = -static_cast<double>(oracle::logistic(5.0L * y));
  }
  return d;
}

}  // namespace

TEST_CASE("zero members give the linear model") {
  const auto data = system_data(SystemId::Duffing);
  const auto fit = matching_pursuit_fit(data, PursuitPool::standard(data), 0);
  CHECK(fit.trace.empty());
  CHECK(fit.picks.empty());
  CHECK(fit.model.dictionary == Dictionary::identity(2));
  CHECK(fit.model.K == fit_k(data, Dictionary::identity(2)).K);
}

TEST_CASE("pool layout") {
  const auto data = system_data(SystemId::VanDerPol);
  const auto pool = PursuitPool::standard(data, 9);
  const auto range = data_range(data);
  CHECK(pool.lattice_size() == 81);
  CHECK(pool.size() == 486);
  const auto first = pool.candidate(0);
  CHECK(first.kind == BasisKind::Logistic);
  CHECK(first.params[0].center() == range[0].first);
  CHECK(first.params[1].center() == range[1].first);
  CHECK(first.params[0].steepness() == 1.0);
  CHECK(pool.candidate(1).params[0].center() == range[0].first);
  CHECK(pool.candidate(1).params[1].center() > range[1].first);
  CHECK(pool.candidate(9).params[0].center() > range[0].first);
  CHECK(pool.candidate(81).params[0].steepness() == 3.0);
  CHECK(pool.candidate(162).params[0].steepness() == 10.0);
  CHECK(pool.candidate(243).kind == BasisKind::Rbf);
  CHECK(pool.candidate(485).params[1].center() == doctest::Approx(range[1].second));
  CHECK_THROWS_AS(pool.candidate(486), ConfigError);
  CHECK_THROWS_AS(PursuitPool::standard(data, 0), ConfigError);
}

TEST_CASE("the selection trace never increases") {
  for (auto id : {SystemId::VanDerPol, SystemId::Duffing, SystemId::PredatorPrey, SystemId::ToggleSwitch}) {
    CAPTURE(to_string(id));
    const auto data = system_data(id);
    const auto pool = PursuitPool::standard(data, 7);
    const auto fit = matching_pursuit_fit(data, pool, 12, 0.0);
    REQUIRE(fit.trace.size() == 12);
    for (std::size_t k = 1; k < fit.trace.size(); ++k)
      CHECK(fit.trace[k] <= fit.trace[k - 1] + 1e-12 * fit.trace[0]);
    CHECK(std::set<std::size_t>(fit.picks.begin(), fit.picks.end()).size() == 12);
    CHECK(fit.model.dictionary.size() == 12);
  }
}

TEST_CASE("the trace matches an independent least-squares residual") {
  const auto data = system_data(SystemId::Duffing);
  const auto pool = PursuitPool::standard(data, 5);
  const auto fit = matching_pursuit_fit(data, pool, 6, 0.0);
  for (std::size_t k = 0; k < fit.picks.size(); ++k) {
    const std::vector<std::size_t> prefix(fit.picks.begin(), fit.picks.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    CHECK(fit.trace[k] == doctest::Approx(measurement_residual(data, pool, prefix)).epsilon(1e-8));
  }
}

TEST_CASE("the first pick is the best single candidate") {
  const auto data = system_data(SystemId::PredatorPrey);
  const auto pool = PursuitPool::standard(data, 5);
  double best = INFINITY;
  std::size_t arg = 0;
  for (std::size_t c = 0; c < pool.size(); ++c) {
    const double res = measurement_residual(data, pool, {c});
    if (res < best) {
      best = res;
      arg = c;
    }
  }
  const auto fit = matching_pursuit_fit(data, pool, 1, 0.0);
  CHECK(fit.picks[0] == arg);
}

TEST_CASE("a planted logistic generator is found first") {
  const auto data = planted_data();
  auto pool = PursuitPool::standard(data, 9);
  pool.steepness_levels = {1.0, 3.0, 5.0, 10.0};
  const auto fit = matching_pursuit_fit(data, pool, 1, 0.0);
  const auto pick = pool.candidate(fit.picks[0]);
  CHECK(pick.kind == BasisKind::Logistic);
  CHECK(pick.params[0].center() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pick.params[0].steepness() == 5.0);
  CHECK(fit.trace[0] < 1e-20);
  CHECK(fit.model.mode == DataMode::ContinuousDerivatives);
  // row 1 of the generator is [0, 0, -1] on the basis [1, y, member]
  CHECK(fit.model.K(1, 2) == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("ridge and the full-residual objective") {
  const auto data = system_data(SystemId::VanDerPol, 3);
  const auto pool = PursuitPool::standard(data, 4);
  const auto ridged = matching_pursuit_fit(data, pool, 5, 1e-6);
  CHECK(ridged.model.diagnostics.ridge == 1e-6);
  CHECK(ridged.trace.size() == 5);
  const auto all = matching_pursuit_fit(data, pool, 3, std::nullopt, PursuitObjective::AllRows);
  CHECK(all.picks.size() == 3);
  CHECK(std::set<std::size_t>(all.picks.begin(), all.picks.end()).size() == 3);
  CHECK(all.model.K.rows() == 6);
}

TEST_CASE("pool errors") {
  const auto data = system_data(SystemId::Duffing, 2);
  PursuitPool pool = PursuitPool::standard(data, 2);
  CHECK(pool.size() == 24);
  CHECK_THROWS_AS(matching_pursuit_fit(data, pool, 25), ConfigError);
  CHECK_THROWS_AS(matching_pursuit_fit(data, pool, -1), ConfigError);
  CHECK_THROWS_AS(matching_pursuit_fit(data, pool, 2, -1.0), ConfigError);
  pool.centers.pop_back();
  CHECK_THROWS_AS(matching_pursuit_fit(data, pool, 2), ConfigError);
  pool = PursuitPool::standard(data, 2);
  pool.steepness_levels.clear();
  CHECK_THROWS_AS(matching_pursuit_fit(data, pool, 1), ConfigError);
}
