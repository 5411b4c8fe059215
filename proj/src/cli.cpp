#include "augsill/cli.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "augsill/closure.hpp"
#include "augsill/dataset.hpp"
#include "augsill/dictionary_io.hpp"
#include "augsill/errors.hpp"
#include "augsill/expectation.hpp"
#include "augsill/experiment.hpp"
#include "augsill/model_io.hpp"
#include "augsill/solver.hpp"
#include "augsill/systems.hpp"
#include "augsill/text_format.hpp"
#include "augsill/trainer.hpp"
#include "augsill/trajectory_io.hpp"

namespace augsill {

namespace {

namespace fs = std::filesystem;
using boost::property_tree::ptree;

ptree::path_type key(const std::string& path) { return ptree::path_type(path, '/'); }

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out += ',';
    out += cells[k];
  }
  return out + '\n';
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

fs::path make_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create '" + dir + "': " + ec.message());
  return fs::path(dir);
}

void write_effective_config(const CLI::App& cmd, const fs::path& dir) {
  std::string text = "[" + cmd.get_name() + "]\n";
  for (const CLI::Option* opt : cmd.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    if (opt->get_expected_max() == 0) {
      text += name + (opt->count() ? " = true\n" : " = false\n");
      continue;
    }
    std::vector<std::string> values = opt->results();
    if (values.empty() && !opt->get_default_str().empty()) values = {opt->get_default_str()};
    if (values.empty()) continue;
    std::string joined;
    for (std::size_t k = 0; k < values.size(); ++k) joined += (k ? "," : "") + values[k];
    text += name + " = " + joined + '\n';
  }
  write_text_file((dir / "effective_config.ini").string(), text);
}

struct SimOptions {
  std::string system = "vanderpol";
  double dt = 0.1;
  int steps = 50;
  int trajectories = 40;
  std::uint64_t seed = 0;
  double max_substep = kDefaultMaxSubstep;
};

void add_sim_options(CLI::App* cmd, SimOptions& o) {
  cmd->add_option("--system", o.system, "vanderpol, duffing, predatorprey or toggleswitch")
      ->capture_default_str();
  cmd->add_option("--dt", o.dt, "sampling interval")->capture_default_str();
  cmd->add_option("--steps", o.steps, "samples per trajectory after the initial state")
      ->capture_default_str();
  cmd->add_option("--trajectories", o.trajectories, "number of trajectories")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--max-substep", o.max_substep, "largest RK4 step")->capture_default_str();
}

SimulationConfig to_sim_config(const SimOptions& o, unsigned workers) {
  SimulationConfig cfg;
  cfg.dt = o.dt;
  cfg.steps = o.steps;
  cfg.trajectories = o.trajectories;
  cfg.seed = o.seed;
  cfg.workers = workers;
  if (o.max_substep != kDefaultMaxSubstep) throw ConfigError("--max-substep is fixed at 1e-3");
  return cfg;
}

/// Label of a trajectory directory: its metadata system, or "custom".
std::string data_label(const std::string& dir) {
  const fs::path meta = fs::path(dir) / "metadata.ini";
  if (!fs::exists(meta)) return "custom";
  const auto tree = ini_to_tree(read_text_file(meta.string()));
  return tree.get(key("simulation/system"), std::string("custom"));
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  SimOptions sim;
  bool held_out = false;
  bool derivatives = false;
  unsigned workers = 1;
  std::string out;
};

void run_simulate(const CLI::App& cmd, const SimulateArgs& a, std::ostream& out) {
  const SystemSpec spec = SystemSpec::standard(system_id_from_string(a.sim.system));
  SimulationConfig cfg = to_sim_config(a.sim, a.workers);
  if (a.held_out) cfg.salt = kEvaluationSalt;
  const auto trajectories = simulate(spec, cfg);

  const fs::path dir = make_dir(a.out);
  for (std::size_t k = 0; k < trajectories.size(); ++k)
    write_trajectory_csv((dir / trajectory_file_name(k)).string(), trajectories[k], a.derivatives);

  ptree meta;
  meta.put(key("simulation/system"), std::string(to_string(spec.id)));
  meta.put(key("simulation/constants"), format_list(spec.constants));
  meta.put(key("simulation/dt"), format_double(cfg.dt));
  meta.put(key("simulation/steps"), cfg.steps);
  meta.put(key("simulation/trajectories"), cfg.trajectories);
  meta.put(key("simulation/seed"), cfg.seed);
  meta.put(key("simulation/held_out"), a.held_out ? "true" : "false");
  meta.put(key("run/created"), utc_timestamp());
  write_text_file((dir / "metadata.ini").string(), tree_to_ini(meta));
  write_effective_config(cmd, dir);
  out << "wrote " << trajectories.size() << " trajectories to " << dir.string() << '\n';
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string data;
  std::string eval_data;
  SimOptions sim;
  int eval_trajectories = 10;
  std::string method = "sgd";
  std::string family = "augsill";
  int N = 20;
  std::string mode = "discrete";
  std::optional<double> ridge;
  int epochs = 1000;
  int batch_size = 32;
  double learning_rate = 1e-2;
  double lr_decay = 0.999;
  int refit_k_every = 10;
  bool train_k = false;
  int eval_every = 50;
  int eval_steps = 5;
  int pool_points = 9;
  std::vector<double> steepness_levels{1.0, 3.0, 10.0};
  std::vector<std::string> pool_kinds{"logistic", "rbf"};
  std::string pursuit_objective = "measurement";
  unsigned workers = 1;
  std::string out;
};

void run_fit(const CLI::App& cmd, const FitArgs& a, std::ostream& out) {
  std::vector<Trajectory> train, eval;
  if (!a.data.empty()) {
    train = read_trajectory_dir(a.data);
    if (!a.eval_data.empty()) eval = read_trajectory_dir(a.eval_data);
  } else {
    const auto data = make_experiment_data(system_id_from_string(a.sim.system),
                                           to_sim_config(a.sim, a.workers), a.eval_trajectories,
                                           a.sim.seed);
    train = data.train;
    eval = data.eval;
  }
  const DataMode mode = data_mode_from_string(a.mode);
  const SnapshotDataset dataset = build_snapshot_dataset(train, mode);
  const DictionaryFamily family = dictionary_family_from_string(a.family);

  TrainConfig tc;
  tc.epochs = a.epochs;
  tc.batch_size = a.batch_size;
  tc.learning_rate = a.learning_rate;
  tc.lr_decay = a.lr_decay;
  tc.seed = a.sim.seed;
  tc.refit_k_every = a.refit_k_every;
  tc.train_k = a.train_k;
  tc.eval_every = a.eval_every;
  tc.eval_steps = a.eval_steps;
  tc.ridge = a.ridge;

  const fs::path dir = make_dir(a.out);
  KoopmanModel model;
  if (a.method == "closed") {
    const Dictionary d = has_shape_parameters(family)
                             ? random_dictionary(family, dataset.m(), a.N, data_range(dataset),
                                                 a.sim.seed)
                             : Dictionary::polynomial(family, dataset.m(), a.N);
    model = fit_k(dataset, d, a.ridge);
  } else if (a.method == "dmd") {
    model = dmd_baseline(dataset);
  } else if (a.method == "sgd") {
    tc.validate();
    const SgdResult fit = sgd_fit(dataset, family, a.N, tc, eval.empty() ? nullptr : &eval);
    model = fit.model;
    std::string log = "epoch,loss,five_step_error\n";
    for (const auto& e : fit.log)
      log += join({std::to_string(e.epoch), format_double(e.loss),
                   e.five_step_error ? format_double(*e.five_step_error) : std::string()});
    write_text_file((dir / "training_log.csv").string(), log);
  } else if (a.method == "pursuit") {
    PursuitPool pool = PursuitPool::standard(dataset, a.pool_points);
    pool.steepness_levels = a.steepness_levels;
    pool.kinds.clear();
    for (const auto& k : a.pool_kinds) pool.kinds.push_back(basis_kind_from_string(k));
    PursuitObjective objective;
    if (a.pursuit_objective == "measurement") objective = PursuitObjective::MeasurementRows;
    else if (a.pursuit_objective == "all") objective = PursuitObjective::AllRows;
    else throw ConfigError("unknown pursuit objective '" + a.pursuit_objective + "'");
    const PursuitResult fit = matching_pursuit_fit(dataset, pool, a.N, a.ridge, objective);
    model = fit.model;
    std::string trace = "step,objective,pool_index,kind\n";
    for (std::size_t k = 0; k < fit.trace.size(); ++k)
      trace += join({std::to_string(k + 1), format_double(fit.trace[k]),
                     std::to_string(fit.picks[k]),
                     std::string(to_string(pool.candidate(fit.picks[k]).kind))});
    write_text_file((dir / "pursuit_trace.csv").string(), trace);
  } else {
    throw ConfigError("unknown fit method '" + a.method + "'");
  }
  save_model(dir.string(), model);
  write_effective_config(cmd, dir);
  out << "fitted " << to_string(model.dictionary.family()) << " model with N = "
      << model.dictionary.size() << " (rank " << model.diagnostics.rank << ")\n";
  if (!eval.empty())
    out << a.eval_steps << "-step error on held-out data: "
        << format_double(n_step_error(model, eval, a.eval_steps, a.workers)) << '\n';
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string model;
  std::string data;
  SimOptions sim;
  int n_steps = 5;
  std::string windows;
  unsigned workers = 1;
  std::string out;
};

void run_evaluate(const CLI::App&, const EvaluateArgs& a, std::ostream& out) {
  const KoopmanModel model = load_model(a.model);
  std::vector<Trajectory> trajectories;
  std::string label;
  std::uint64_t seed = a.sim.seed;
  if (!a.data.empty()) {
    trajectories = read_trajectory_dir(a.data);
    label = data_label(a.data);
    seed = trajectories.front().seed;
  } else {
    const SystemSpec spec = SystemSpec::standard(system_id_from_string(a.sim.system));
    SimulationConfig cfg = to_sim_config(a.sim, a.workers);
    cfg.salt = kEvaluationSalt;
    trajectories = simulate(spec, cfg);
    label = std::string(to_string(spec.id));
  }
  const auto errors = n_step_window_errors(model, trajectories, a.n_steps, a.workers);
  double total = 0.0;
  for (double e : errors) total += e;
  const double error = total / static_cast<double>(errors.size());

  std::string report = "system,dictionary,N,n_steps,error,seed\n";
  report += join({label, std::string(to_string(model.dictionary.family())),
                  std::to_string(model.dictionary.size()), std::to_string(a.n_steps),
                  format_double(error), std::to_string(seed)});
  if (!a.out.empty()) {
    if (fs::path(a.out).has_parent_path()) make_dir(fs::path(a.out).parent_path().string());
    write_text_file(a.out, report);
  }
  if (!a.windows.empty()) {
    std::string text = "window,error\n";
    for (std::size_t k = 0; k < errors.size(); ++k)
      text += join({std::to_string(k), format_double(errors[k])});
    write_text_file(a.windows, text);
  }
  out << report;
}

// ---------------------------------------------------------------- closure

struct ClosureArgs {
  std::string suite = "all";
  std::vector<int> theorems{1, 2, 3, 4};
  int configs = 50;
  std::vector<int> dims{1, 2, 3};
  int samples = 10000;
  std::vector<double> alphas = kDefaultAlphaScales;
  std::uint64_t seed = 0;
  std::string h_rule = "orthant";
  std::vector<int> degrees{1, 2, 3};
  double explosion_min = 10.0;
  double explosion_max = 1e4;
  int explosion_points = 12;
  int mc_samples = 100000;
  double a = 2.0;
  int n_logistic = 2;
  int n_rbf = 2;
  unsigned workers = 1;
  std::string out;
};

HCaseSplit h_rule_from_string(const std::string& name) {
  if (name == "orthant") return HCaseSplit::Orthant;
  if (name == "any") return HCaseSplit::AnyDimension;
  throw ConfigError("unknown H rule '" + name + "'");
}

void run_closure(const CLI::App& cmd, const ClosureArgs& a, std::ostream& out) {
  const bool all = a.suite == "all";
  if (!all && a.suite != "theorems" && a.suite != "lie" && a.suite != "explosion" &&
      a.suite != "means")
    throw ConfigError("unknown closure suite '" + a.suite + "'");
  const HCaseSplit rule = h_rule_from_string(a.h_rule);
  const fs::path dir = make_dir(a.out);

  std::string report = "theorem,m,alpha_scale,sup_error,mean_error,bound\n";
  if (all || a.suite == "theorems") {
    SuiteOptions opt;
    opt.configs = a.configs;
    opt.dims = a.dims;
    opt.samples = a.samples;
    opt.alpha_scales = a.alphas;
    opt.seed = a.seed;
    opt.workers = a.workers;
    std::string fits = "theorem,config_id,slope,r_squared\n";
    for (int t : a.theorems) {
      if (t < 1 || t > 4) throw ConfigError("theorems are numbered 1 to 4");
      const Theorem theorem = static_cast<Theorem>(t);
      std::vector<SweepResult> sweeps(static_cast<std::size_t>(std::max(a.configs, 0)));
      for (std::size_t k = 0; k < sweeps.size(); ++k)
        sweeps[k] = run_sweep(random_theorem_config(theorem, static_cast<int>(k), opt), a.alphas, rule);
      for (const auto& s : sweeps)
        fits += join({std::to_string(t), std::to_string(s.config_id), format_double(s.fit.slope),
                      format_double(s.fit.r_squared)});
      for (int m : a.dims)
        for (std::size_t q = 0; q < a.alphas.size(); ++q) {
          double sup = 0.0, mean = 0.0;
          int count = 0;
          for (const auto& s : sweeps) {
            if (s.m != m) continue;
            sup = std::max(sup, s.sup_errors[q]);
            mean += s.mean_errors[q];
            ++count;
          }
          if (count == 0) continue;
          report += join({std::to_string(t), std::to_string(m), format_double(a.alphas[q]),
                          format_double(sup), format_double(mean / count), ""});
        }
    }
    write_text_file((dir / "rate_fits.csv").string(), fits);
  }

  if (all || a.suite == "lie") {
    static const char* kRowNames[] = {"lie_logistic_limit", "lie_logistic_product", "lie_rbf_limit",
                                      "lie_rbf_product"};
    static const char* kStageNames[] = {"lie_logistic_exact_vs_limit", "lie_rbf_exact_vs_limit"};
    for (int m : a.dims) {
      const LieFixture fx = random_lie_fixture(m, a.n_logistic, a.n_rbf, a.seed, a.samples);
      for (double alpha : a.alphas) {
        const Dictionary d = scaled_dictionary(fx.dictionary, alpha);
        const auto gaps = lie_closure_error(d, fx.weights, fx.samples, rule);
        std::array<GapStats, 4> agg{};
        std::array<GapStats, 2> stage{};
        std::array<double, 4> bound{};
        for (const auto& g : gaps) {
          const bool is_log = g.kind == BasisKind::Logistic;
          const int r = is_log ? 0 : 2;
          const double members = is_log ? a.n_logistic : a.n_rbf;
          const auto params = matched_bound_params(d, fx.weights, g.member);
          stage[r / 2].sup = std::max(stage[r / 2].sup, g.exact_vs_limit.sup);
          stage[r / 2].mean += g.exact_vs_limit.mean / members;
          agg[r].sup = std::max(agg[r].sup, g.limit_vs_linear.sup);
          agg[r].mean += g.limit_vs_linear.mean / members;
          agg[r + 1].sup = std::max(agg[r + 1].sup, g.exact_vs_product.sup);
          agg[r + 1].mean += g.exact_vs_product.mean / members;
          bound[r] += error_bound(params, is_log ? BoundRow::LogisticLimit : BoundRow::RbfLimit) /
                      members;
          bound[r + 1] +=
              error_bound(params, is_log ? BoundRow::LogisticProduct : BoundRow::RbfProduct) /
              members;
        }
        for (int r = 0; r < 2; ++r)
          report += join({kStageNames[r], std::to_string(m), format_double(alpha),
                          format_double(stage[r].sup), format_double(stage[r].mean), ""});
        for (int r = 0; r < 4; ++r)
          report += join({kRowNames[r], std::to_string(m), format_double(alpha),
                          format_double(agg[r].sup), format_double(agg[r].mean),
                          format_double(bound[r])});
      }
    }
    std::string checks = "m,row,mean_error,std_error,bound\n";
    for (int m : a.dims)
      for (const auto& c : bound_check(m, a.n_logistic, a.n_rbf, a.a, a.mc_samples, a.seed, rule))
        checks += join({std::to_string(m), std::to_string(static_cast<int>(c.row)),
                        format_double(c.mean_error), format_double(c.std_error),
                        format_double(c.mean_bound)});
    write_text_file((dir / "bound_check.csv").string(), checks);
  }
  write_text_file((dir / "closure_report.csv").string(), report);

  if (all || a.suite == "explosion") {
    const auto ys = logspace(a.explosion_min, a.explosion_max, a.explosion_points);
    std::string table = "degree,y,residual\n";
    std::string fits = "degree,exponent\n";
    for (int degree : a.degrees) {
      const auto rows = polynomial_explosion_demo(degree, ys);
      for (const auto& r : rows)
        table += join({std::to_string(degree), format_double(r.y), format_double(r.residual)});
      fits += join({std::to_string(degree), format_double(explosion_exponent(rows))});
    }
    write_text_file((dir / "explosion.csv").string(), table);
    write_text_file((dir / "explosion_fits.csv").string(), fits);
  }

  if (all || a.suite == "means") {
    std::string table = "m,function,mean,std_error,bound\n";
    for (int m : a.dims) {
      const auto means = conjunctive_means(m, a.a, a.mc_samples, a.seed, rule);
      table += join({std::to_string(m), "logistic", format_double(means.logistic.mean),
                     format_double(means.logistic.std_error), format_double(std::exp2(-m))});
      table += join({std::to_string(m), "rbf", format_double(means.rbf.mean),
                     format_double(means.rbf.std_error), format_double(std::exp2(-2 * m))});
      table += join({std::to_string(m), "h", format_double(means.h.mean),
                     format_double(means.h.std_error), format_double(std::exp2(-3 * m))});
    }
    write_text_file((dir / "conjunctive_means.csv").string(), table);
  }
  write_effective_config(cmd, dir);
  out << "closure suite '" << a.suite << "' written to " << dir.string() << '\n';
}

// ---------------------------------------------------------------- expectation

struct ExpectationArgs {
  std::vector<double> a{0.5, 1.0, 2.0, 5.0};
  int quadrature_points = 64;
  long mc_samples = 1000000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out;
};

void run_expectation(const CLI::App& cmd, const ExpectationArgs& args, std::ostream& out) {
  std::string table = "a,kind,mean,variance,mc_mean,mc_stderr\n";
  for (double a : args.a)
    for (BasisKind kind : {BasisKind::Logistic, BasisKind::Rbf}) {
      SamplingSpec spec;
      spec.a = a;
      spec.quadrature_points = args.quadrature_points;
      spec.mc_samples = args.mc_samples;
      spec.seed = args.seed;
      spec.workers = args.workers;
      const Moments q = expected_value(kind, spec);
      const MonteCarloEstimate mc = monte_carlo_expectation(kind, spec);
      table += join({format_double(a), std::string(to_string(kind)), format_double(q.mean),
                     format_double(q.variance), format_double(mc.mean),
                     format_double(mc.std_error)});
    }
  const fs::path path(args.out);
  if (path.has_parent_path()) make_dir(path.parent_path().string());
  write_text_file(path.string(), table);
  write_effective_config(cmd, path.has_parent_path() ? path.parent_path() : fs::path("."));
  out << table;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::vector<std::string> systems{"vanderpol", "duffing", "predatorprey", "toggleswitch"};
  std::vector<std::string> families{"sill", "augsill", "summed_rbf", "legendre", "hermite"};
  std::vector<int> dims{5, 10, 20};
  std::vector<std::uint64_t> seeds{0, 1, 2};
  SimOptions sim;
  int eval_trajectories = 10;
  int epochs = 1000;
  int batch_size = 32;
  double learning_rate = 1e-2;
  double lr_decay = 0.999;
  int refit_k_every = 10;
  int n_steps = 5;
  bool no_dmd = false;
  unsigned workers = 1;
  std::string out;
};

void run_compare_command(const CLI::App& cmd, const CompareArgs& a, std::ostream& out) {
  CompareConfig cfg;
  cfg.systems.clear();
  for (const auto& s : a.systems) cfg.systems.push_back(system_id_from_string(s));
  cfg.families.clear();
  for (const auto& f : a.families) cfg.families.push_back(dictionary_family_from_string(f));
  cfg.dims = a.dims;
  cfg.seeds = a.seeds;
  cfg.simulation = to_sim_config(a.sim, 1);
  cfg.eval_trajectories = a.eval_trajectories;
  cfg.train.epochs = a.epochs;
  cfg.train.batch_size = a.batch_size;
  cfg.train.learning_rate = a.learning_rate;
  cfg.train.lr_decay = a.lr_decay;
  cfg.train.refit_k_every = a.refit_k_every;
  cfg.train.validate();
  cfg.n_steps = a.n_steps;
  cfg.include_dmd = !a.no_dmd;
  cfg.workers = a.workers;

  const auto rows = run_compare(cfg);
  const fs::path dir = make_dir(a.out);
  std::string summary = "system,dictionary,N,n_steps,error,seed\n";
  for (const auto& r : rows)
    summary += join({std::string(to_string(r.system)), r.dictionary, std::to_string(r.N),
                     std::to_string(r.n_steps), format_double(r.error), std::to_string(r.seed)});
  write_text_file((dir / "summary.csv").string(), summary);
  std::string medians = "system,dictionary,N,median_error,seeds\n";
  for (const auto& r : median_errors(rows))
    medians += join({std::string(to_string(r.system)), r.dictionary, std::to_string(r.N),
                     format_double(r.median_error), std::to_string(r.seeds)});
  write_text_file((dir / "medians.csv").string(), medians);
  write_effective_config(cmd, dir);
  out << medians;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Koopman models with logistic and RBF dictionaries", "augsill"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file with one [subcommand] section of option values");
  app.fallthrough();

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "integrate a benchmark system into trajectory CSVs");
  add_sim_options(sim, sim_args.sim);
  sim->add_flag("--held-out", sim_args.held_out, "draw the held-out evaluation set");
  sim->add_flag("--derivatives", sim_args.derivatives, "add dx columns with the vector field");
  sim->add_option("--workers", sim_args.workers)->capture_default_str();
  sim->add_option("--out", sim_args.out, "output directory")->required();

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "fit a Koopman model");
  fit->add_option("--data", fit_args.data, "trajectory directory (simulated inline when omitted)");
  fit->add_option("--eval-data", fit_args.eval_data, "held-out trajectory directory");
  add_sim_options(fit, fit_args.sim);
  fit->add_option("--eval-trajectories", fit_args.eval_trajectories)->capture_default_str();
  fit->add_option("--method", fit_args.method, "closed, sgd, pursuit or dmd")->capture_default_str();
  fit->add_option("--family", fit_args.family)->capture_default_str();
  fit->add_option("-N,--N", fit_args.N, "number of nonlinear members")->capture_default_str();
  fit->add_option("--mode", fit_args.mode, "discrete or continuous")->capture_default_str();
  fit->add_option("--ridge", fit_args.ridge, "ridge parameter (default scales with the data)");
  fit->add_option("--epochs", fit_args.epochs)->capture_default_str();
  fit->add_option("--batch-size", fit_args.batch_size)->capture_default_str();
  fit->add_option("--learning-rate", fit_args.learning_rate)->capture_default_str();
  fit->add_option("--lr-decay", fit_args.lr_decay)->capture_default_str();
  fit->add_option("--refit-k-every", fit_args.refit_k_every)->capture_default_str();
  fit->add_flag("--train-k", fit_args.train_k, "also take gradient steps on K");
  fit->add_option("--eval-every", fit_args.eval_every)->capture_default_str();
  fit->add_option("--eval-steps", fit_args.eval_steps)->capture_default_str();
  fit->add_option("--pool-points", fit_args.pool_points)->capture_default_str();
  fit->add_option("--steepness-levels", fit_args.steepness_levels)
      ->delimiter(',')
      ->capture_default_str();
  fit->add_option("--pool-kinds", fit_args.pool_kinds)->delimiter(',')->capture_default_str();
  fit->add_option("--pursuit-objective", fit_args.pursuit_objective, "measurement or all")
      ->capture_default_str();
  fit->add_option("--workers", fit_args.workers)->capture_default_str();
  fit->add_option("--out", fit_args.out, "output directory")->required();

  EvaluateArgs eval_args;
  eval_args.sim.trajectories = 10;
  auto* evaluate = app.add_subcommand("evaluate", "n-step prediction error of a saved model");
  evaluate->add_option("--model", eval_args.model, "model directory")->required();
  evaluate->add_option("--data", eval_args.data,
                       "trajectory directory (held-out set simulated when omitted)");
  add_sim_options(evaluate, eval_args.sim);
  evaluate->add_option("--n-steps", eval_args.n_steps)->capture_default_str();
  evaluate->add_option("--windows", eval_args.windows, "CSV of per-window errors");
  evaluate->add_option("--workers", eval_args.workers)->capture_default_str();
  evaluate->add_option("--out", eval_args.out, "report CSV");

  ClosureArgs closure_args;
  auto* closure = app.add_subcommand("closure", "closure theorem, bound and explosion suites");
  closure->add_option("--suite", closure_args.suite, "theorems, lie, explosion, means or all")
      ->capture_default_str();
  closure->add_option("--theorems", closure_args.theorems)->delimiter(',')->capture_default_str();
  closure->add_option("--configs", closure_args.configs)->capture_default_str();
  closure->add_option("--dims", closure_args.dims)->delimiter(',')->capture_default_str();
  closure->add_option("--samples", closure_args.samples)->capture_default_str();
  closure->add_option("--alphas", closure_args.alphas)->delimiter(',')->capture_default_str();
  closure->add_option("--seed", closure_args.seed)->capture_default_str();
  closure->add_option("--h-rule", closure_args.h_rule, "orthant or any")->capture_default_str();
  closure->add_option("--degrees", closure_args.degrees)->delimiter(',')->capture_default_str();
  closure->add_option("--explosion-min", closure_args.explosion_min)->capture_default_str();
  closure->add_option("--explosion-max", closure_args.explosion_max)->capture_default_str();
  closure->add_option("--explosion-points", closure_args.explosion_points)->capture_default_str();
  closure->add_option("--mc-samples", closure_args.mc_samples)->capture_default_str();
  closure->add_option("--a", closure_args.a, "half-width of the uniform law")->capture_default_str();
  closure->add_option("--n-logistic", closure_args.n_logistic)->capture_default_str();
  closure->add_option("--n-rbf", closure_args.n_rbf)->capture_default_str();
  closure->add_option("--workers", closure_args.workers)->capture_default_str();
  closure->add_option("--out", closure_args.out, "output directory")->required();

  ExpectationArgs exp_args;
  auto* expectation = app.add_subcommand("expectation", "expected logistic and RBF values");
  expectation->add_option("--a", exp_args.a)->delimiter(',')->capture_default_str();
  expectation->add_option("--quadrature-points", exp_args.quadrature_points)->capture_default_str();
  expectation->add_option("--mc-samples", exp_args.mc_samples)->capture_default_str();
  expectation->add_option("--seed", exp_args.seed)->capture_default_str();
  expectation->add_option("--workers", exp_args.workers)->capture_default_str();
  expectation->add_option("--out", exp_args.out, "output CSV")->required();

  CompareArgs cmp_args;
  auto* compare = app.add_subcommand("compare", "dictionary comparison grid");
  compare->add_option("--systems", cmp_args.systems)->delimiter(',')->capture_default_str();
  compare->add_option("--families", cmp_args.families)->delimiter(',')->capture_default_str();
  compare->add_option("--dims", cmp_args.dims)->delimiter(',')->capture_default_str();
  compare->add_option("--seeds", cmp_args.seeds)->delimiter(',')->capture_default_str();
  compare->add_option("--dt", cmp_args.sim.dt)->capture_default_str();
  compare->add_option("--steps", cmp_args.sim.steps)->capture_default_str();
  compare->add_option("--trajectories", cmp_args.sim.trajectories)->capture_default_str();
  compare->add_option("--eval-trajectories", cmp_args.eval_trajectories)->capture_default_str();
  compare->add_option("--epochs", cmp_args.epochs)->capture_default_str();
  compare->add_option("--batch-size", cmp_args.batch_size)->capture_default_str();
  compare->add_option("--learning-rate", cmp_args.learning_rate)->capture_default_str();
  compare->add_option("--lr-decay", cmp_args.lr_decay)->capture_default_str();
  compare->add_option("--refit-k-every", cmp_args.refit_k_every)->capture_default_str();
  compare->add_option("--n-steps", cmp_args.n_steps)->capture_default_str();
  compare->add_flag("--no-dmd", cmp_args.no_dmd, "skip the DMD reference rows");
  compare->add_option("--workers", cmp_args.workers)->capture_default_str();
  compare->add_option("--out", cmp_args.out, "output directory")->required();

  for (auto* cmd : {sim, fit, evaluate, closure, expectation, compare}) cmd->configurable();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "augsill: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*sim) run_simulate(*sim, sim_args, out);
    else if (*fit) run_fit(*fit, fit_args, out);
    else if (*evaluate) run_evaluate(*evaluate, eval_args, out);
    else if (*closure) run_closure(*closure, closure_args, out);
    else if (*expectation) run_expectation(*expectation, exp_args, out);
    else if (*compare) run_compare_command(*compare, cmp_args, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "augsill: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "augsill: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "augsill: " << e.what() << '\n';
    return kExitData;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace augsill
