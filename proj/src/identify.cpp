#include "minstab/identify.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace minstab {
namespace {

struct DataMatrices {
  Eigen::MatrixXd x;       // n x N
  Eigen::MatrixXd x_plus;  // n x N
  Eigen::MatrixXd u;       // m x N
};

DataMatrices concatenate(const std::vector<OnlineDataset>& runs) {
  const int n = runs.front().state_dim();
  const int m = runs.front().input_dim();
  Eigen::Index total = 0;
  for (const auto& run : runs) {
    if (run.state_dim() != n || run.input_dim() != m) {
      throw std::invalid_argument("pseudo_estimate: datasets disagree on dims");
    }
    total += run.size();
  }
  DataMatrices d{Eigen::MatrixXd(n, total), Eigen::MatrixXd(n, total),
                 Eigen::MatrixXd(m, total)};
  Eigen::Index at = 0;
  for (const auto& run : runs) {
    d.x.middleCols(at, run.size()) = run.states();
    d.x_plus.middleCols(at, run.size()) = run.next_states();
    d.u.middleCols(at, run.size()) = run.inputs();
    at += run.size();
  }
  return d;
}

PseudoEstimateResult estimate_from(const DataMatrices& d, int n, int m,
                                   const Tolerance& tol) {
  Eigen::MatrixXd stacked(n + m, d.x.cols());
  stacked.topRows(n) = d.x;
  stacked.bottomRows(m) = d.u;
  const Eigen::MatrixXd theta = d.x_plus * pinv(stacked, tol);

  PseudoEstimateResult result{
      Estimate(theta.leftCols(n), theta.rightCols(m)), 0.0, true};

  double scale = 1.0;
  for (Eigen::Index k = 0; k < d.x.cols(); ++k) {
    const double residual =
        (d.x_plus.col(k) - theta * stacked.col(k)).norm();
    result.max_residual = std::max(result.max_residual, residual);
    scale = std::max({scale, d.x.col(k).norm(), d.x_plus.col(k).norm()});
  }
  result.consistent =
      result.max_residual <= tol.rel_rank_tol * scale + tol.abs_floor;
  return result;
}

}  // namespace

Estimate::Estimate(Eigen::MatrixXd a_in, Eigen::MatrixXd b_in)
    : a_hat(std::move(a_in)), b_hat(std::move(b_in)) {
  if (a_hat.rows() != a_hat.cols() || b_hat.rows() != a_hat.rows()) {
    throw std::invalid_argument("Estimate: inconsistent dimensions");
  }
  require_finite(a_hat, "Estimate A_hat");
  require_finite(b_hat, "Estimate B_hat");
}

PseudoEstimateResult pseudo_estimate(const OnlineDataset& dataset,
                                     const Tolerance& tol) {
  return pseudo_estimate(std::vector<OnlineDataset>{dataset}, tol);
}

PseudoEstimateResult pseudo_estimate(const std::vector<OnlineDataset>& runs,
                                     const Tolerance& tol) {
  if (runs.empty()) {
    throw std::invalid_argument("pseudo_estimate: no datasets given");
  }
  const int n = runs.front().state_dim();
  const int m = runs.front().input_dim();
  return estimate_from(concatenate(runs), n, m, tol);
}

bool consistent(const OnlineDataset& dataset, const Estimate& est,
                const Tolerance& tol) {
  if (est.a_hat.rows() != dataset.state_dim() ||
      est.b_hat.cols() != dataset.input_dim()) {
    throw std::invalid_argument("consistent: estimate dimension mismatch");
  }
  for (const DataTriple& t : dataset.triples()) {
    const double scale = std::max({1.0, t.x.norm(), t.x_plus.norm()});
    const double residual =
        (t.x_plus - est.a_hat * t.x - est.b_hat * t.u).norm();
    if (residual > tol.rel_rank_tol * scale + tol.abs_floor) return false;
  }
  return true;
}

ConsistentSetInfo consistent_set_info(const OnlineDataset& dataset,
                                      const Tolerance& tol) {
  const int n = dataset.state_dim();
  const int m = dataset.input_dim();
  Eigen::MatrixXd stacked(n + m, dataset.size());
  stacked.topRows(n) = dataset.states();
  stacked.bottomRows(m) = dataset.inputs();
  const int r = rank(stacked, tol);
  return ConsistentSetInfo{r, n * (n + m) - n * r};
}

bool identification_optimal(const OnlineDataset& dataset, const LtiSystem& sys,
                            const Eigen::Ref<const Eigen::VectorXd>& x0,
                            const Tolerance& tol) {
  const int n_tilde = explorable_subspace(sys, x0, tol).dim();
  return consistent_set_info(dataset, tol).constraint_rank ==
         n_tilde + dataset.input_dim();
}

}  // namespace minstab
