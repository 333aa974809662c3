#pragma once

#include <vector>

#include <Eigen/Core>

namespace minstab {

/// Numerical tolerance policy shared by every rank/span decision in the
/// library. The rank threshold for a matrix M is
///
///   max(rows, cols) * sigma_max(M) * rel_rank_tol + abs_floor,
///
/// the usual max-dimension-scaled SVD cutoff. span_contains scales
/// rel_rank_tol by max(||v||, 1) instead of by singular values.
struct Tolerance {
  double rel_rank_tol = 1e-9;
  double abs_floor = 1e-12;

  void validate() const;
};

struct SvdResult {
  Eigen::MatrixXd u;                // rows x k, orthonormal columns
  Eigen::VectorXd singular_values;  // k = min(rows, cols), descending
  Eigen::MatrixXd v;                // cols x k, orthonormal columns
};

/// Thin SVD, M = U * diag(S) * V^T. Throws std::invalid_argument on
/// non-finite input and std::runtime_error if the iteration fails to
/// converge (never returns a silently wrong factorization).
SvdResult svd(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Numerical rank: number of singular values above the Tolerance threshold.
int rank(const Eigen::Ref<const Eigen::MatrixXd>& m, const Tolerance& tol = {});

/// Moore-Penrose pseudoinverse. Singular values below the rank threshold
/// are treated as exact zeros.
Eigen::MatrixXd pinv(const Eigen::Ref<const Eigen::MatrixXd>& m,
                     const Tolerance& tol = {});

/// True iff v lies in span{columns of candidates} up to tolerance, decided
/// by the least-squares projection residual:
///   ||v - candidates * c|| <= rel_rank_tol * max(||v||, 1) + abs_floor.
/// A zero-column candidate matrix spans exactly {0}.
bool span_contains(const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                   const Eigen::Ref<const Eigen::VectorXd>& v,
                   const Tolerance& tol = {});

/// Convenience overload for a list of candidate vectors (all of the same
/// dimension as v; the empty list spans {0}).
bool span_contains(const std::vector<Eigen::VectorXd>& candidates,
                   const Eigen::Ref<const Eigen::VectorXd>& v,
                   const Tolerance& tol = {});

/// Eigenvalues of a square matrix, with multiplicity, in unspecified order.
/// Throws std::runtime_error if the QR iteration does not converge.
Eigen::VectorXcd eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// max |lambda| over eigenvalues(m); 0 for the empty matrix.
double spectral_radius(const Eigen::Ref<const Eigen::MatrixXd>& m);

/// Rank threshold used by rank() and pinv() for a matrix of the given shape
/// with largest singular value sigma_max.
double rank_threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max,
                      const Tolerance& tol);

/// Throws std::invalid_argument naming `what` if m has a NaN/Inf entry.
void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m,
                    const char* what);

}  // namespace minstab
