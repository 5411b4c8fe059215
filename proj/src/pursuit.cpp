#include <cmath>
#include <limits>
#include <string>

#include "augsill/errors.hpp"
#include "augsill/trainer.hpp"

namespace augsill {

PursuitPool PursuitPool::standard(const SnapshotDataset& data, int points) {
  if (points < 1) throw ConfigError("lattice needs at least one point per dimension");
  PursuitPool pool;
  for (const auto& [lo, hi] : data_range(data)) {
    std::vector<double> axis;
    for (int k = 0; k < points; ++k)
      axis.push_back(points == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (points - 1.0));
    pool.centers.push_back(std::move(axis));
  }
  return pool;
}

std::size_t PursuitPool::lattice_size() const {
  if (centers.empty()) return 0;
  std::size_t n = 1;
  for (const auto& axis : centers) n *= axis.size();
  return n;
}

std::size_t PursuitPool::size() const {
  return kinds.size() * steepness_levels.size() * lattice_size();
}

ConjunctiveFunction PursuitPool::candidate(std::size_t index) const {
  if (index >= size()) throw ConfigError("pool index out of range");
  const std::size_t lattice = lattice_size();
  std::size_t cell = index % lattice;
  const std::size_t level = (index / lattice) % steepness_levels.size();
  const std::size_t kind = index / (lattice * steepness_levels.size());
  ConjunctiveFunction f;
  f.kind = kinds[kind];
  std::vector<double> c(centers.size());
  for (std::size_t i = centers.size(); i-- > 0;) {
    c[i] = centers[i][cell % centers[i].size()];
    cell /= centers[i].size();
  }
  for (double v : c) f.params.emplace_back(v, steepness_levels[level]);
  return f;
}

namespace {

void validate_pool(const PursuitPool& pool, int m, int N) {
  if (pool.m() != m) throw ConfigError("pool dimension differs from the data");
  for (const auto& axis : pool.centers)
    if (axis.empty()) throw ConfigError("pool lattice axis is empty");
  if (pool.kinds.empty() || pool.steepness_levels.empty()) throw ConfigError("pool is empty");
  if (pool.size() < static_cast<std::size_t>(N))
    throw ConfigError("pool has " + std::to_string(pool.size()) + " candidates, fewer than N = " +
                      std::to_string(N));
}

Dictionary assemble(int m, const PursuitPool& pool, const std::vector<std::size_t>& picks) {
  std::vector<ConjunctiveFunction> logistic, rbf;
  for (auto p : picks) {
    auto f = pool.candidate(p);
    (f.kind == BasisKind::Logistic ? logistic : rbf).push_back(std::move(f));
  }
  if (rbf.empty()) return Dictionary::sill(m, std::move(logistic));
  return Dictionary::aug_sill(m, std::move(logistic), std::move(rbf));
}

/// Targets for the measurement rows: [1, y'] for pairs, [0, dy/dt] for derivatives.
Eigen::MatrixXd measurement_targets(const SnapshotDataset& data) {
  Eigen::MatrixXd B(data.rows(), 1 + data.m());
  B.col(0).setConstant(data.mode == DataMode::DiscretePairs ? 1.0 : 0.0);
  B.rightCols(data.m()) = data.targets;
  return B;
}

/// Greedy selection on the nested measurement-row problem. Columns are kept
/// orthogonalized against the chosen basis (modified Gram-Schmidt, applied
/// twice), so each candidate's gain is a cheap projection.
std::vector<std::size_t> select_measurement_rows(const SnapshotDataset& data,
                                                 const PursuitPool& pool, int N, double ridge,
                                                 std::vector<double>& trace) {
  const int m = data.m();
  const Eigen::Index r = data.rows();
  const Eigen::Index base = 1 + m;
  const Eigen::Index pool_size = static_cast<Eigen::Index>(pool.size());
  const bool augmented = ridge > 0.0;
  const Eigen::Index rows = augmented ? r + base + pool_size : r;
  const double sqrt_ridge = std::sqrt(ridge);

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(rows, 1 + m);
  B.topRows(r) = measurement_targets(data);

  Eigen::MatrixXd basis_cols = Eigen::MatrixXd::Zero(rows, base);
  basis_cols.col(0).head(r).setOnes();
  basis_cols.block(0, 1, r, m) = data.inputs;
  if (augmented)
    for (Eigen::Index k = 0; k < base; ++k) basis_cols(r + k, k) = sqrt_ridge;

  Eigen::MatrixXd cand = Eigen::MatrixXd::Zero(rows, pool_size);
  for (Eigen::Index c = 0; c < pool_size; ++c) {
    const auto f = pool.candidate(static_cast<std::size_t>(c));
    for (Eigen::Index t = 0; t < r; ++t) cand(t, c) = eval_conjunctive(f, data.inputs.row(t).transpose());
    if (augmented) cand(r + base + c, c) = sqrt_ridge;
  }
  const Eigen::VectorXd original_norm2 = cand.colwise().squaredNorm().transpose();

  auto absorb = [&](Eigen::VectorXd q) {
    const double nq = q.norm();
    if (!(nq > 0.0)) return;
    q /= nq;
    for (int pass = 0; pass < 2; ++pass) cand -= q * (q.transpose() * cand);
    for (int pass = 0; pass < 2; ++pass) B -= q * (q.transpose() * B);
  };

  // Orthonormalize the fixed [1, y] columns first.
  Eigen::MatrixXd Q(rows, 0);
  for (Eigen::Index k = 0; k < base; ++k) {
    Eigen::VectorXd v = basis_cols.col(k);
    for (int pass = 0; pass < 2; ++pass) v -= Q * (Q.transpose() * v);
    const double nv = v.norm();
    if (nv <= 1e-12 * basis_cols.col(k).norm()) continue;
    v /= nv;
    Q.conservativeResize(Eigen::NoChange, Q.cols() + 1);
    Q.col(Q.cols() - 1) = v;
    absorb(v);
  }

  std::vector<bool> used(static_cast<std::size_t>(pool_size), false);
  std::vector<std::size_t> picks;
  for (int step = 0; step < N; ++step) {
    double best_gain = -1.0;
    Eigen::Index best = -1;
    for (Eigen::Index c = 0; c < pool_size; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      const double n2 = cand.col(c).squaredNorm();
      double gain = 0.0;
      if (n2 > 1e-20 * original_norm2[c]) gain = (cand.col(c).transpose() * B).squaredNorm() / n2;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    picks.push_back(static_cast<std::size_t>(best));
    const double n2 = cand.col(best).squaredNorm();
    if (n2 > 1e-20 * original_norm2[best]) absorb(cand.col(best));
    trace.push_back(B.squaredNorm());
  }
  return picks;
}

std::vector<std::size_t> select_all_rows(const SnapshotDataset& data, const PursuitPool& pool,
                                         int N, double ridge, std::vector<double>& trace) {
  std::vector<std::size_t> picks;
  std::vector<bool> used(pool.size(), false);
  for (int step = 0; step < N; ++step) {
    double best_res = std::numeric_limits<double>::infinity();
    std::size_t best = pool.size();
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (used[c]) continue;
      auto trial = picks;
      trial.push_back(c);
      const Dictionary d = assemble(data.m(), pool, trial);
      const LiftedData lifted = lift_dataset(data, d);
      const Eigen::MatrixXd K = solve_koopman(lifted, ridge);
      const double res = (lifted.Y - lifted.X * K.transpose()).squaredNorm();
      if (res < best_res || best == pool.size()) {
        best_res = res;
        best = c;
      }
    }
    used[best] = true;
    picks.push_back(best);
    trace.push_back(best_res);
  }
  return picks;
}

}  // namespace

PursuitResult matching_pursuit_fit(const SnapshotDataset& data, const PursuitPool& pool, int N,
                                   std::optional<double> ridge, PursuitObjective objective) {
  validate(data);
  if (N < 0) throw ConfigError("N must be nonnegative");
  if (ridge && !(*ridge >= 0.0)) throw ConfigError("ridge must be >= 0");
  const int m = data.m();
  validate_pool(pool, m, N);
  const double select_ridge = ridge.value_or(0.0);

  PursuitResult result;
  if (N > 0) {
    result.picks = objective == PursuitObjective::MeasurementRows
                       ? select_measurement_rows(data, pool, N, select_ridge, result.trace)
                       : select_all_rows(data, pool, N, select_ridge, result.trace);
  }
  result.model = fit_k(data, N > 0 ? assemble(m, pool, result.picks) : Dictionary::identity(m), ridge);
  return result;
}

}  // namespace augsill
