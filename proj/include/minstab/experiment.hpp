#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "minstab/explorer.hpp"
#include "minstab/gain.hpp"
#include "minstab/identify.hpp"
#include "minstab/lti.hpp"
#include "minstab/matops.hpp"

namespace minstab {

/// Invalid user input (flags, config values, malformed input files). Mapped
/// to exit code 2 by the CLI; algorithmic failures map to 1.
struct ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

SystemKind parse_system_kind(const std::string& name);
std::string to_string(SystemKind kind);

struct ExperimentConfig {
  int n = 2;
  int m = 1;
  SystemKind kind = SystemKind::kControllable;
  int trials = 1;
  std::uint64_t seed = 0;
  double noise_std = 0.0;
  int repeats = 1;  // number of exploration calls per trial
  std::optional<double> rel_rank_tol;
  std::string out_dir = "out";

  void validate() const;
  Tolerance tolerance() const;
};

/// One row of the sweep CSV. success is defined as rho_true < 1: the
/// synthesized gain stabilizes the true system.
struct TrialRecord {
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  int n_tilde = 0;
  int steps = 0;
  double est_error = 0.0;
  double rho_est = 0.0;
  double rho_true = 0.0;
  bool success = false;
};

std::string trial_csv_header();
std::string trial_csv_row(const TrialRecord& record);

/// Everything a single explore-estimate-synthesize pass produced. `failure`
/// is empty when a certified gain came out; exploration hiccups that the
/// pipeline recovered from are listed in `notes`.
struct TrialOutcome {
  std::vector<OnlineDataset> datasets;
  std::optional<Estimate> estimate;
  bool estimate_consistent = true;
  std::optional<GainResult> gain;
  std::string failure;
  std::vector<std::string> notes;
  TrialRecord record;
};

/// Runs `config.repeats` explorations on one plant (continuing trajectory),
/// stacks the data, estimates, synthesizes, and certifies against the truth.
/// Exploration and estimation use config.tolerance(); the oracle-side
/// quantities (n_tilde, est_error, rho_true) always use the strict default.
TrialOutcome execute_trial(const LtiSystem& sys, const Eigen::VectorXd& x0,
                           const ExperimentConfig& config,
                           std::uint64_t noise_seed,
                           std::uint64_t record_seed);

/// Seeded random trial: system, x0, and noise streams are derived from
/// derive_seed(config.seed, trial_index).
TrialRecord run_trial(const ExperimentConfig& config,
                      std::uint64_t trial_index);

struct PipelineInputs {
  std::optional<std::string> system_path;  // load instead of sampling
  std::optional<Eigen::VectorXd> x0;       // explicit initial state
};

/// Single run with artifacts written to config.out_dir: system.json,
/// dataset JSON per exploration call, estimate.json, gain.json on success,
/// trial.json always, diagnostic.json on failure. Returns the exit code.
int run_pipeline(const ExperimentConfig& config, const PipelineInputs& inputs,
                 std::ostream& out);

/// Independent seeded trials; writes sweep.csv and aggregate.json to
/// config.out_dir. Per-trial failures become unsuccessful rows.
int run_sweep(const ExperimentConfig& config, std::ostream& out);

/// Random-signal identification lengths next to the fast-exploration count
/// on one seeded system; writes pe_compare.csv. Returns 1 if any row has
/// alg1_steps > pe_min_length.
int run_compare_pe(const ExperimentConfig& config, std::ostream& out);

}  // namespace minstab
