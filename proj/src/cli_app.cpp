#include "minstab/cli_app.hpp"

#include <algorithm>
#include <optional>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "minstab/experiment.hpp"

namespace minstab {

namespace {

struct CliState {
  ExperimentConfig config;
  std::string kind_name = "controllable";
  double tol_value = 0.0;
  bool tol_set = false;
  std::vector<double> x0_values;
  std::string system_path;
};

void add_common_options(CLI::App& sub, CliState& state) {
  sub.add_option("--seed", state.config.seed, "Base seed for all randomness")
      ->capture_default_str();
  sub.add_option("--n", state.config.n, "State dimension")
      ->capture_default_str();
  sub.add_option("--m", state.config.m, "Input dimension")
      ->capture_default_str();
  sub.add_option("--kind", state.kind_name, "Random system ensemble")
      ->check(CLI::IsMember({"controllable", "stabilizable_uncontrollable"}))
      ->capture_default_str();
  sub.add_option("--trials", state.config.trials, "Number of trials")
      ->capture_default_str();
  sub.add_option("--noise-std", state.config.noise_std,
                 "Process noise standard deviation")
      ->capture_default_str();
  sub.add_option("--repeats", state.config.repeats,
                 "Exploration calls per trial")
      ->capture_default_str();
  sub.add_option("--tol", state.tol_value,
                 "Relative rank tolerance override for exploration and "
                 "estimation");
  sub.add_option("--out-dir", state.config.out_dir, "Artifact directory")
      ->capture_default_str();
}

void finalize(CLI::App& sub, CliState& state) {
  state.config.kind = parse_system_kind(state.kind_name);
  if (sub.count("--tol") > 0) {
    state.config.rel_rank_tol = state.tol_value;
  }
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Minimum-time identification and stabilization of unknown "
               "linear systems from a single online trajectory",
               "minstab"};
  app.require_subcommand(1);

  CliState state;

  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "Explore once, estimate, synthesize a gain, write JSON "
                  "artifacts");
  add_common_options(*pipeline, state);
  pipeline->add_option("--system", state.system_path,
                       "Load the plant from a system JSON file instead of "
                       "sampling one");
  pipeline
      ->add_option("--x0", state.x0_values,
                   "Initial state as comma-separated values")
      ->delimiter(',');

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run seeded random trials and write sweep.csv plus "
               "aggregate.json");
  add_common_options(*sweep, state);

  CLI::App* compare = app.add_subcommand(
      "compare-pe", "Measure random-signal identification lengths against "
                    "fast exploration");
  add_common_options(*compare, state);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (pipeline->parsed()) {
      finalize(*pipeline, state);
      PipelineInputs inputs;
      if (pipeline->count("--system") > 0) {
        inputs.system_path = state.system_path;
      }
      if (pipeline->count("--x0") > 0) {
        inputs.x0 = Eigen::Map<const Eigen::VectorXd>(
            state.x0_values.data(),
            static_cast<Eigen::Index>(state.x0_values.size()));
      }
      state.config.validate();
      return run_pipeline(state.config, inputs, out);
    }
    if (sweep->parsed()) {
      finalize(*sweep, state);
      state.config.validate();
      return run_sweep(state.config, out);
    }
    finalize(*compare, state);
    state.config.validate();
    return run_compare_pe(state.config, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace minstab
