#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "augsill/dataset.hpp"
#include "augsill/errors.hpp"
#include "augsill/systems.hpp"
#include "augsill/trajectory_io.hpp"

using namespace augsill;

namespace {

Trajectory exponential_decay(double dt, int steps) {
  Trajectory t;
  t.dt = dt;
  t.states.resize(steps + 1, 1);
  for (int k = 0; k <= steps; ++k) t.states(k, 0) = std::exp(-k * dt);
  return t;
}

}  // namespace

TEST_CASE("vector fields at reference points") {
  CHECK(system_rhs(SystemSpec::standard(SystemId::VanDerPol), Eigen::Vector2d::Zero()).isZero(0.0));
  CHECK(system_rhs(SystemSpec::standard(SystemId::PredatorPrey), Eigen::Vector2d::Zero()).isZero(0.0));
  const Eigen::Vector2d toggle = system_rhs(SystemSpec::standard(SystemId::ToggleSwitch), Eigen::Vector2d::Zero());
  CHECK(toggle[0] == 2.5);
  CHECK(toggle[1] == 1.5);
  CHECK_THROWS_AS(system_rhs(SystemSpec::standard(SystemId::ToggleSwitch), Eigen::Vector2d(-0.1, 1.0)),
                  DomainError);
  // Duffing: x'' = -c2 x' - c3 x - c4 x^3
  const Eigen::Vector2d duff = system_rhs(SystemSpec::standard(SystemId::Duffing), Eigen::Vector2d(2.0, 0.5));
  CHECK(duff[0] == 0.5);
  CHECK(duff[1] == doctest::Approx(2.0 - 8.0));
  // Van der Pol: x2' = -x1 + c1 (1 - x1^2) x2
  const Eigen::Vector2d vdp = system_rhs(SystemSpec::standard(SystemId::VanDerPol), Eigen::Vector2d(2.0, 1.0));
  CHECK(vdp[1] == doctest::Approx(-2.0 - 3.0));
  SystemSpec bad = SystemSpec::standard(SystemId::Duffing);
  bad.constants.pop_back();
  CHECK_THROWS_AS(system_rhs(bad, Eigen::Vector2d::Zero()), ConfigError);
}

TEST_CASE("system names round trip") {
  for (auto id : {SystemId::VanDerPol, SystemId::Duffing, SystemId::PredatorPrey, SystemId::ToggleSwitch})
    CHECK(system_id_from_string(to_string(id)) == id);
  CHECK(system_id_from_string("toggle") == SystemId::ToggleSwitch);
  CHECK_THROWS_AS(system_id_from_string("lorenz"), ConfigError);
}

TEST_CASE("integrate boundaries") {
  const auto vdp = SystemSpec::standard(SystemId::VanDerPol);
  CHECK_THROWS_AS(integrate(vdp, Eigen::Vector2d::Zero(), 0.1, 0), ConfigError);
  CHECK_THROWS_AS(integrate(vdp, Eigen::Vector2d::Zero(), 0.0, 3), ConfigError);
  const Trajectory t = integrate(vdp, Eigen::Vector2d::Zero(), 0.1, 1);
  REQUIRE(t.length() == 2);
  CHECK(t.states.row(0) == t.states.row(1));
}

TEST_CASE("Van der Pol stays on a bounded limit cycle") {
  const auto vdp = SystemSpec::standard(SystemId::VanDerPol);
  const Trajectory fine = integrate(vdp, Eigen::Vector2d(2, 0), 1.0, 100, 1e-5);
  const Trajectory ours = integrate(vdp, Eigen::Vector2d(2, 0), 1.0, 100);
  CHECK(fine.states.cwiseAbs().maxCoeff() < 5.0);
  CHECK(ours.states.cwiseAbs().maxCoeff() < 5.0);
  CHECK((fine.states - ours.states).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("halving the substep changes recorded states by less than 1e-8") {
  for (auto id : {SystemId::VanDerPol, SystemId::Duffing, SystemId::PredatorPrey, SystemId::ToggleSwitch}) {
    const auto s = SystemSpec::standard(id);
    const Eigen::Vector2d x0 = id == SystemId::ToggleSwitch || id == SystemId::PredatorPrey
                                   ? Eigen::Vector2d(1.5, 2.0)
                                   : Eigen::Vector2d(1.5, -1.0);
    const Trajectory a = integrate(s, x0, 0.1, 50);
    const Trajectory b = integrate(s, x0, 0.1, 50, 0.5e-3);
    CHECK((a.states - b.states).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("RK4 self-convergence order on Duffing") {
  const auto s = SystemSpec::standard(SystemId::Duffing);
  const Eigen::Vector2d x0(1.2, 0.3);
  auto end = [&](double h) { return integrate(s, x0, 1.0, 1, h).states.row(1).transpose().eval(); };
  const Eigen::Vector2d a = end(0.1), b = end(0.05), c = end(0.025);
  const double order = std::log2((a - b).norm() / (b - c).norm());
  CHECK(order >= 3.8);
}

TEST_CASE("divergence is reported with its step") {
  SystemSpec s = SystemSpec::standard(SystemId::Duffing);
  s.constants = {0.0, -1.0, -1.0};  // x'' = x + x^3 blows up in finite time
  try {
    integrate(s, Eigen::Vector2d(2.0, 0.0), 0.1, 100);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.step() >= 1);
    CHECK(e.step() <= 100);
  }
}

TEST_CASE("simulation is deterministic and independent of workers") {
  SimulationConfig cfg;
  cfg.trajectories = 8;
  cfg.steps = 20;
  cfg.seed = 42;
  const auto s = SystemSpec::standard(SystemId::PredatorPrey);
  const auto a = simulate(s, cfg);
  cfg.workers = 4;
  const auto b = simulate(s, cfg);
  REQUIRE(a.size() == 8);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].states == b[k].states);
    const auto [lo, hi] = s.initial_box();
    CHECK(a[k].states.row(0).minCoeff() >= lo);
    CHECK(a[k].states.row(0).maxCoeff() <= hi);
  }
  cfg.salt = kEvaluationSalt;
  const auto held_out = simulate(s, cfg);
  CHECK(held_out[0].states.row(0) != a[0].states.row(0));
}

TEST_CASE("snapshot dataset counting") {
  const Trajectory t = exponential_decay(0.1, 10);
  CHECK(build_snapshot_dataset({t}, DataMode::DiscretePairs).rows() == 10);
  CHECK(build_snapshot_dataset({t}, DataMode::ContinuousDerivatives).rows() == 9);
  const auto two = build_snapshot_dataset({t, exponential_decay(0.1, 5)}, DataMode::DiscretePairs);
  CHECK(two.rows() == 15);
  const auto d2 = build_snapshot_dataset({t, exponential_decay(0.1, 5)}, DataMode::ContinuousDerivatives);
  CHECK(d2.rows() == 13);
}

TEST_CASE("constant trajectories") {
  Trajectory t;
  t.dt = 0.2;
  t.states = Eigen::MatrixXd::Constant(6, 2, 1.5);
  const auto pairs = build_snapshot_dataset({t}, DataMode::DiscretePairs);
  CHECK(pairs.inputs == pairs.targets);
  const auto deriv = build_snapshot_dataset({t}, DataMode::ContinuousDerivatives);
  CHECK(deriv.targets.isZero(0.0));
}

TEST_CASE("central differences of exp(-t) are second order accurate") {
  const Trajectory t = exponential_decay(0.01, 200);
  const auto d = build_snapshot_dataset({t}, DataMode::ContinuousDerivatives);
  double worst = 0.0;
  for (Eigen::Index r = 0; r < d.rows(); ++r) worst = std::max(worst, std::abs(d.targets(r, 0) + d.inputs(r, 0)));
  CHECK(worst <= 1e-4);
  CHECK(worst > 0.0);
}

TEST_CASE("dataset errors") {
  CHECK_THROWS_AS(build_snapshot_dataset({}, DataMode::DiscretePairs), ConfigError);
  CHECK_THROWS_AS(build_snapshot_dataset({exponential_decay(0.1, 5), exponential_decay(0.2, 5)},
                                         DataMode::DiscretePairs),
                  ConfigError);
  Trajectory other = exponential_decay(0.1, 5);
  other.system = SystemSpec::standard(SystemId::Duffing);
  CHECK_THROWS_AS(build_snapshot_dataset({exponential_decay(0.1, 5), other}, DataMode::DiscretePairs),
                  ConfigError);
  Trajectory bad = exponential_decay(0.1, 5);
  bad.states(2, 0) = std::nan("");
  CHECK_THROWS_AS(build_snapshot_dataset({bad}, DataMode::DiscretePairs), DataError);
}

TEST_CASE("exact derivative dataset") {
  const auto s = SystemSpec::standard(SystemId::VanDerPol);
  Eigen::MatrixXd states(2, 2);
  states << 2.0, 1.0, 0.0, 0.0;
  const auto d = exact_derivative_dataset(s, states);
  CHECK(d.mode == DataMode::ContinuousDerivatives);
  CHECK(d.targets.row(0).transpose() == system_rhs(s, Eigen::Vector2d(2.0, 1.0)));
}

TEST_CASE("trajectory CSV round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "augsill_test_traj";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const Trajectory t = integrate(SystemSpec::standard(SystemId::Duffing), Eigen::Vector2d(0.5, 0.1), 0.1, 12);
  const std::string text = trajectory_to_csv(t, true);
  CHECK(text.rfind("t,x1,x2,dx1,dx2\n", 0) == 0);
  write_trajectory_csv((dir / trajectory_file_name(0)).string(), t, true);
  write_trajectory_csv((dir / trajectory_file_name(1)).string(), t, false);
  const auto back = read_trajectory_dir(dir.string());
  REQUIRE(back.size() == 2);
  CHECK(back[0].states == t.states);
  CHECK(back[1].states == t.states);
  CHECK(back[0].dt == doctest::Approx(0.1).epsilon(1e-12));

  const Trajectory scalar = exponential_decay(0.1, 4);
  CHECK(trajectory_to_csv(scalar, false).rfind("t,x1\n", 0) == 0);
  write_trajectory_csv((dir / "scalar.csv").string(), scalar, false);
  CHECK(read_trajectory_csv((dir / "scalar.csv").string(), scalar.system).states == scalar.states);
  CHECK(trajectory_file_name(7) == "traj_007.csv");
  std::filesystem::remove_all(dir);
}

TEST_CASE("trajectory CSV errors") {
  const auto dir = std::filesystem::temp_directory_path() / "augsill_test_traj_bad";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = (dir / "a.csv").string();
  const auto spec = SystemSpec::standard(SystemId::VanDerPol);
  auto write = [&](const char* s) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs(s, f);
    std::fclose(f);
  };
  write("a,b\n1,2\n");
  CHECK_THROWS_AS(read_trajectory_csv(path, spec), DataError);
  write("t,x1\n0,1\n0.1,2\n0.3,3\n");
  CHECK_THROWS_AS(read_trajectory_csv(path, spec), DataError);
  write("t,x1\n0,1\n0.1\n");
  CHECK_THROWS_AS(read_trajectory_csv(path, spec), DataError);
  CHECK_THROWS_AS(read_trajectory_dir((dir / "missing").string()), DataError);
  std::filesystem::remove_all(dir);
}
