#include "minstab/pe.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "minstab/explorer.hpp"
#include "minstab/identify.hpp"
#include "minstab/rng.hpp"

namespace minstab {

InputSignal::InputSignal(int input_dim) : input_dim_(input_dim) {
  if (input_dim_ < 1) {
    throw std::invalid_argument("InputSignal: input dimension must be >= 1");
  }
}

InputSignal::InputSignal(std::vector<Eigen::VectorXd> samples, int input_dim)
    : InputSignal(input_dim) {
  for (auto& u : samples) {
    append(u);
  }
}

void InputSignal::append(const Eigen::VectorXd& u) {
  if (u.size() != input_dim_) {
    throw std::invalid_argument("InputSignal: sample dimension mismatch");
  }
  require_finite(u, "InputSignal: sample");
  samples_.push_back(u);
}

HankelBlock hankel(const InputSignal& signal, int depth) {
  const int m = signal.input_dim();
  const int length = signal.size();
  if (depth < 1) {
    throw std::invalid_argument("hankel: depth must be >= 1");
  }
  if (length < depth) {
    throw std::invalid_argument("hankel: signal shorter than depth");
  }
  const int cols = length - depth + 1;
  HankelBlock block;
  block.depth = depth;
  block.matrix.resize(static_cast<Eigen::Index>(depth) * m, cols);
  for (int i = 0; i < depth; ++i) {
    for (int j = 0; j < cols; ++j) {
      block.matrix.block(static_cast<Eigen::Index>(i) * m, j, m, 1) =
          signal.samples()[static_cast<std::size_t>(i) + j];
    }
  }
  return block;
}

bool is_pe(const InputSignal& signal, int depth, const Tolerance& tol) {
  const HankelBlock block = hankel(signal, depth);
  return rank(block.matrix, tol) == depth * signal.input_dim();
}

InputSignal make_pe_signal(int input_dim, int depth, std::uint64_t seed) {
  if (depth < 1) {
    throw std::invalid_argument("make_pe_signal: depth must be >= 1");
  }
  auto engine = make_engine(seed);
  const int start_length = depth * (input_dim + 1) - 1;
  const int cap = 4 * depth * (input_dim + 1);
  InputSignal signal(input_dim);
  for (int i = 0; i < start_length; ++i) {
    signal.append(gaussian_vector(input_dim, engine));
  }
  while (!is_pe(signal, depth)) {
    if (signal.size() >= cap) {
      throw std::runtime_error(
          "make_pe_signal: no PE signal within " + std::to_string(cap) +
          " samples");
    }
    signal.append(gaussian_vector(input_dim, engine));
  }
  return signal;
}

bool pe_identification_trial(const LtiSystem& sys,
                             const Eigen::Ref<const Eigen::VectorXd>& x0,
                             const InputSignal& signal,
                             const Tolerance& tol) {
  if (signal.input_dim() != sys.input_dim()) {
    throw std::invalid_argument(
        "pe_identification_trial: signal dimension mismatch");
  }
  Plant plant(sys, x0);
  OnlineDataset dataset(sys.state_dim(), sys.input_dim());
  for (const auto& u : signal.samples()) {
    const Eigen::VectorXd x = plant.state();
    const Eigen::VectorXd x_plus = plant.apply(u);
    dataset.append({x_plus, x, u});
  }
  return identification_optimal(dataset, sys, x0, tol);
}

ComparisonSummary minimal_length_comparison(
    const LtiSystem& sys, const Eigen::Ref<const Eigen::VectorXd>& x0,
    const std::vector<std::uint64_t>& seeds, const Tolerance& tol) {
  const int n = sys.state_dim();
  const int m = sys.input_dim();
  const int n_tilde = explorable_subspace(sys, x0, tol).dim();
  const int bound_paper = 2 * (n + 1) * m - 1;
  const int bound_hankel = (n + 1) * (m + 1) - 2;

  Plant alg1_plant(sys, x0);
  const int alg1_steps = explore(alg1_plant, tol).steps;

  const int cap = std::max({bound_paper, bound_hankel, n + m}) + 8;

  ComparisonSummary summary;
  std::vector<int> lengths;
  for (const std::uint64_t seed : seeds) {
    auto engine = make_engine(derive_seed(seed, 1));
    Plant plant(sys, x0);
    OnlineDataset dataset(n, m);
    int achieved = -1;
    for (int k = 0; k < cap; ++k) {
      const Eigen::VectorXd u = gaussian_vector(m, engine);
      const Eigen::VectorXd x = plant.state();
      const Eigen::VectorXd x_plus = plant.apply(u);
      dataset.append({x_plus, x, u});
      if (identification_optimal(dataset, sys, x0, tol)) {
        achieved = dataset.size();
        break;
      }
    }
    if (achieved < 0) {
      throw std::runtime_error(
          "minimal_length_comparison: random signal failed to identify "
          "within " + std::to_string(cap) + " samples (seed " +
          std::to_string(seed) + ")");
    }
    ComparisonRow row;
    row.seed = seed;
    row.n = n;
    row.m = m;
    row.n_tilde = n_tilde;
    row.alg1_steps = alg1_steps;
    row.pe_min_length = achieved;
    row.bound_paper = bound_paper;
    row.bound_hankel = bound_hankel;
    summary.rows.push_back(row);
    lengths.push_back(achieved);
  }

  if (!lengths.empty()) {
    std::sort(lengths.begin(), lengths.end());
    summary.min_pe_length = lengths.front();
    const std::size_t mid = lengths.size() / 2;
    summary.median_pe_length =
        lengths.size() % 2 == 1
            ? lengths[mid]
            : 0.5 * (lengths[mid - 1] + lengths[mid]);
  }
  return summary;
}

}  // namespace minstab
