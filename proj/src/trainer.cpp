#include "augsill/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "augsill/errors.hpp"
#include "augsill/random.hpp"

namespace augsill {

namespace {

constexpr std::uint64_t kInitSalt = 0x1A17;
constexpr std::uint64_t kShuffleSalt = 0x5F1E;
constexpr double kMaxLogSteepness = 7.0;

struct Adam {
  explicit Adam(Eigen::Index n) : m1(Eigen::VectorXd::Zero(n)), m2(Eigen::VectorXd::Zero(n)) {}

  Eigen::VectorXd step(const Eigen::VectorXd& g, double lr) {
    ++t;
    m1 = beta1 * m1 + (1.0 - beta1) * g;
    m2 = beta2 * m2 + (1.0 - beta2) * g.cwiseProduct(g);
    const double c1 = 1.0 - std::pow(beta1, t);
    const double c2 = 1.0 - std::pow(beta2, t);
    return -lr * (m1 / c1).cwiseQuotient(((m2 / c2).cwiseSqrt().array() + eps).matrix());
  }

  Eigen::VectorXd m1, m2;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  int t = 0;
};

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (batch_size < 1) throw ConfigError("batch size must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw ConfigError("learning rate must be finite and positive");
  if (!(lr_decay > 0.0 && lr_decay <= 1.0)) throw ConfigError("lr decay must lie in (0, 1]");
  if (refit_k_every < 1) throw ConfigError("refit interval must be at least 1");
  if (eval_every < 1 || eval_steps < 1) throw ConfigError("evaluation cadence must be positive");
  for (const auto& [lo, hi] : init_box)
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
      throw ConfigError("initial center box is invalid");
  if (ridge && !(*ridge >= 0.0)) throw ConfigError("ridge must be >= 0");
}

ObjectiveGradient objective_and_gradient(const KoopmanModel& model, const SnapshotDataset& batch) {
  validate(batch);
  if (batch.mode != DataMode::DiscretePairs)
    throw ConfigError("gradient training uses discrete pairs");
  const Dictionary& d = model.dictionary;
  const int m = d.m();
  const int n = d.size();
  const bool shape = has_shape_parameters(d.family());
  const double scale = 1.0 / static_cast<double>(batch.rows());

  ObjectiveGradient out;
  out.dK = Eigen::MatrixXd::Zero(model.K.rows(), model.K.cols());
  out.d_center = Eigen::MatrixXd::Zero(shape ? n : 0, m);
  out.d_steepness = Eigen::MatrixXd::Zero(shape ? n : 0, m);

  for (Eigen::Index b = 0; b < batch.rows(); ++b) {
    const Eigen::VectorXd x = batch.inputs.row(b).transpose();
    const Eigen::VectorXd y = batch.targets.row(b).transpose();
    const Eigen::VectorXd px = lift(d, x);
    const Eigen::VectorXd py = lift(d, y);
    const Eigen::VectorXd e = py - model.K * px;
    out.loss += e.squaredNorm();
    out.dK.noalias() -= 2.0 * e * px.transpose();
    if (!shape) continue;
    const Eigen::VectorXd back = model.K.transpose() * e;
    const ParamGradients gx = param_gradients(d, x);
    const ParamGradients gy = param_gradients(d, y);
    for (int j = 0; j < n; ++j) {
      const double wy = 2.0 * e[1 + m + j];
      const double wx = -2.0 * back[1 + m + j];
      out.d_center.row(j) += wy * gy.d_center.row(j) + wx * gx.d_center.row(j);
      out.d_steepness.row(j) += wy * gy.d_steepness.row(j) + wx * gx.d_steepness.row(j);
    }
  }
  out.loss *= scale;
  out.dK *= scale;
  out.d_center *= scale;
  out.d_steepness *= scale;
  return out;
}

double objective(const KoopmanModel& model, const SnapshotDataset& data) {
  return fit_residual(model, data) / static_cast<double>(data.rows());
}

std::vector<std::pair<double, double>> data_range(const SnapshotDataset& data) {
  validate(data);
  std::vector<std::pair<double, double>> out;
  for (Eigen::Index i = 0; i < data.inputs.cols(); ++i)
    out.emplace_back(data.inputs.col(i).minCoeff(), data.inputs.col(i).maxCoeff());
  return out;
}

Dictionary random_dictionary(DictionaryFamily family, int m, int N,
                             const std::vector<std::pair<double, double>>& box, std::uint64_t seed) {
  if (N < 0) throw ConfigError("member count must be nonnegative");
  if (!has_shape_parameters(family)) return Dictionary::polynomial(family, m, N);
  if (static_cast<int>(box.size()) != m) throw ShapeError("center box must have one range per dimension");
  Rng rng(seed, 0, kInitSalt);
  auto draw = [&] {
    std::vector<ScalarBasisParams> p;
    for (int i = 0; i < m; ++i) {
      const double c = rng.uniform(box[i].first, box[i].second);
      const double a = std::exp(rng.uniform(std::log(0.5), std::log(3.0)));
      p.emplace_back(c, a);
    }
    return p;
  };
  switch (family) {
    case DictionaryFamily::SILL: {
      std::vector<ConjunctiveFunction> members;
      for (int j = 0; j < N; ++j) members.push_back({BasisKind::Logistic, draw()});
      return Dictionary::sill(m, std::move(members));
    }
    case DictionaryFamily::AugSILL: {
      const int nr = N / 2;
      std::vector<ConjunctiveFunction> logistic, rbf;
      for (int j = 0; j < N - nr; ++j) logistic.push_back({BasisKind::Logistic, draw()});
      for (int j = 0; j < nr; ++j) rbf.push_back({BasisKind::Rbf, draw()});
      return Dictionary::aug_sill(m, std::move(logistic), std::move(rbf));
    }
    default: {
      std::vector<std::vector<ScalarBasisParams>> members;
      for (int j = 0; j < N; ++j) members.push_back(draw());
      return Dictionary::summed_rbf(m, std::move(members));
    }
  }
}

SgdResult sgd_fit(const SnapshotDataset& data, DictionaryFamily family, int N,
                  const TrainConfig& cfg, const std::vector<Trajectory>* eval) {
  cfg.validate();
  validate(data);
  if (data.mode != DataMode::DiscretePairs) throw ConfigError("SGD training uses discrete pairs");
  if (N < 1) throw ConfigError("N must be at least 1");
  const int m = data.m();
  const auto box = cfg.init_box.empty() ? data_range(data) : cfg.init_box;
  if (static_cast<int>(box.size()) != m) throw ConfigError("init box has wrong dimension");

  SgdResult result;
  result.model = fit_k(data, random_dictionary(family, m, N, box, cfg.seed), cfg.ridge);
  KoopmanModel& model = result.model;

  int last_finite = -1;
  auto record = [&](int epoch) {
    const double loss = objective(model, data);
    if (!std::isfinite(loss))
      throw TrainingError("training loss became non-finite at epoch " + std::to_string(epoch),
                          last_finite);
    last_finite = epoch;
    result.loss_history.push_back(loss);
    TrainLogEntry entry{epoch, loss, std::nullopt};
    if (eval && !eval->empty() && (epoch % cfg.eval_every == 0 || epoch == cfg.epochs))
      entry.five_step_error = n_step_error(model, *eval, cfg.eval_steps);
    result.log.push_back(entry);
  };
  record(0);

  const bool shape = has_shape_parameters(family);
  Eigen::VectorXd params = model.dictionary.packed_parameters();
  Adam adam_params(params.size());
  Adam adam_k(model.K.size());
  std::vector<Eigen::Index> order(static_cast<std::size_t>(data.rows()));
  double lr = cfg.learning_rate;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (shape || cfg.train_k) {
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      Rng rng(cfg.seed, static_cast<std::uint64_t>(epoch), kShuffleSalt);
      shuffle(order, rng);
      for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
        const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
        const std::vector<Eigen::Index> rows(order.begin() + static_cast<std::ptrdiff_t>(start),
                                             order.begin() + static_cast<std::ptrdiff_t>(stop));
        const ObjectiveGradient g = objective_and_gradient(model, data.subset(rows));
        if (!std::isfinite(g.loss))
          throw TrainingError("batch loss became non-finite at epoch " + std::to_string(epoch),
                              last_finite);
        if (shape) {
          Eigen::VectorXd packed_grad(params.size());
          for (int j = 0; j < model.dictionary.size(); ++j)
            for (int i = 0; i < m; ++i) {
              packed_grad[2 * (j * m + i)] = g.d_center(j, i);
              packed_grad[2 * (j * m + i) + 1] = g.d_steepness(j, i) * model.dictionary.steepness(j, i);
            }
          params += adam_params.step(packed_grad, lr);
          for (Eigen::Index k = 1; k < params.size(); k += 2)
            params[k] = std::clamp(params[k], -kMaxLogSteepness, kMaxLogSteepness);
          if (!params.allFinite())
            throw TrainingError("parameters became non-finite at epoch " + std::to_string(epoch),
                                last_finite);
          model.dictionary.set_packed_parameters(params);
        }
        if (cfg.train_k) {
          const Eigen::VectorXd dk = Eigen::Map<const Eigen::VectorXd>(g.dK.data(), g.dK.size());
          const Eigen::VectorXd delta = adam_k.step(dk, lr);
          model.K += Eigen::Map<const Eigen::MatrixXd>(delta.data(), model.K.rows(), model.K.cols());
        }
      }
    }
    lr *= cfg.lr_decay;
    if (epoch % cfg.refit_k_every == 0 || epoch == cfg.epochs) {
      KoopmanModel refit = fit_k(data, model.dictionary, cfg.ridge);
      model.K = refit.K;
      model.diagnostics = refit.diagnostics;
    }
    record(epoch);
  }
  return result;
}

}  // namespace augsill
