#pragma once

#include <vector>

#include <Eigen/Core>

#include "minstab/explorer.hpp"
#include "minstab/lti.hpp"
#include "minstab/matops.hpp"

namespace minstab {

/// A model pair (A_hat, B_hat) with the dataset's dimensions.
struct Estimate {
  Eigen::MatrixXd a_hat;  // n x n
  Eigen::MatrixXd b_hat;  // n x m

  Estimate(Eigen::MatrixXd a_in, Eigen::MatrixXd b_in);
};

/// Minimum-Frobenius-norm pair consistent with the data, plus the residual
/// diagnostics. For genuine noiseless trajectories `consistent` is true and
/// max_residual is at rounding level; for noisy or hand-made data the same
/// least-squares formula applies and the flag reports whether the result
/// still explains every triple within tolerance.
struct PseudoEstimateResult {
  Estimate estimate;
  double max_residual = 0.0;
  bool consistent = true;
};

/// Geometry of the data-consistent set: rank of the stacked (x; u) data and
/// the dimension n*(n+m) - n*rank of the affine solution set.
struct ConsistentSetInfo {
  int constraint_rank = 0;
  int solution_dim = 0;
};

/// Least-norm estimator X+ * pinv([X; U]). The empty dataset yields the
/// zero pair (the unconstrained Frobenius minimum).
PseudoEstimateResult pseudo_estimate(const OnlineDataset& dataset,
                                     const Tolerance& tol = {});

/// Joint estimate over several runs: X, X+, U are concatenated column-wise
/// before the pseudoinverse (stacked least squares). All datasets must share
/// (n, m); the list must be nonempty.
PseudoEstimateResult pseudo_estimate(const std::vector<OnlineDataset>& runs,
                                     const Tolerance& tol = {});

/// True iff est explains every triple: ||x+ - A_hat x - B_hat u|| within
/// tolerance scaled by the triple's magnitude.
bool consistent(const OnlineDataset& dataset, const Estimate& est,
                const Tolerance& tol = {});

ConsistentSetInfo consistent_set_info(const OnlineDataset& dataset,
                                      const Tolerance& tol = {});

/// Oracle-side check that the dataset pins down everything an online data
/// set from x0 possibly can: stacked-data rank equals
/// dim(explorable subspace) + m.
bool identification_optimal(const OnlineDataset& dataset, const LtiSystem& sys,
                            const Eigen::Ref<const Eigen::VectorXd>& x0,
                            const Tolerance& tol = {});

}  // namespace minstab
