#include "minstab/matops.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace minstab {

void Tolerance::validate() const {
  if (!(rel_rank_tol > 0.0) || !(abs_floor > 0.0)) {
    throw std::invalid_argument("Tolerance fields must be strictly positive");
  }
}

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m,
                    const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) +
                                " has a non-finite entry");
  }
}

double rank_threshold(Eigen::Index rows, Eigen::Index cols, double sigma_max,
                      const Tolerance& tol) {
  tol.validate();
  return static_cast<double>(std::max(rows, cols)) * sigma_max *
             tol.rel_rank_tol +
         tol.abs_floor;
}

SvdResult svd(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  require_finite(m, "svd input");
  const Eigen::Index k = std::min(m.rows(), m.cols());
  if (k == 0) {
    return SvdResult{Eigen::MatrixXd(m.rows(), 0), Eigen::VectorXd(0),
                     Eigen::MatrixXd(m.cols(), 0)};
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(m,
                                        Eigen::ComputeThinU |
                                            Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw std::runtime_error("svd: iteration did not converge");
  }
  return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

int rank(const Eigen::Ref<const Eigen::MatrixXd>& m, const Tolerance& tol) {
  if (m.rows() == 0 || m.cols() == 0) {
    return 0;
  }
  const SvdResult dec = svd(m);
  const double threshold =
      rank_threshold(m.rows(), m.cols(), dec.singular_values(0), tol);
  int r = 0;
  for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
    if (dec.singular_values(i) > threshold) ++r;
  }
  return r;
}

Eigen::MatrixXd pinv(const Eigen::Ref<const Eigen::MatrixXd>& m,
                     const Tolerance& tol) {
  if (m.rows() == 0 || m.cols() == 0) {
    return Eigen::MatrixXd::Zero(m.cols(), m.rows());
  }
  const SvdResult dec = svd(m);
  const double threshold =
      rank_threshold(m.rows(), m.cols(), dec.singular_values(0), tol);
  Eigen::VectorXd inv_s = Eigen::VectorXd::Zero(dec.singular_values.size());
  for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
    if (dec.singular_values(i) > threshold) {
      inv_s(i) = 1.0 / dec.singular_values(i);
    }
  }
  return dec.v * inv_s.asDiagonal() * dec.u.transpose();
}

bool span_contains(const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                   const Eigen::Ref<const Eigen::VectorXd>& v,
                   const Tolerance& tol) {
  tol.validate();
  require_finite(v, "span_contains vector");
  if (candidates.cols() > 0 && candidates.rows() != v.size()) {
    throw std::invalid_argument("span_contains: dimension mismatch");
  }
  const double threshold =
      tol.rel_rank_tol * std::max(v.norm(), 1.0) + tol.abs_floor;
  if (candidates.cols() == 0) {
    return v.norm() <= threshold;
  }
  require_finite(candidates, "span_contains candidates");
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(candidates,
                                        Eigen::ComputeThinU |
                                            Eigen::ComputeThinV);
  const Eigen::VectorXd residual = v - candidates * dec.solve(v);
  return residual.norm() <= threshold;
}

bool span_contains(const std::vector<Eigen::VectorXd>& candidates,
                   const Eigen::Ref<const Eigen::VectorXd>& v,
                   const Tolerance& tol) {
  Eigen::MatrixXd cols(v.size(), static_cast<Eigen::Index>(candidates.size()));
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].size() != v.size()) {
      throw std::invalid_argument("span_contains: dimension mismatch");
    }
    cols.col(static_cast<Eigen::Index>(i)) = candidates[i];
  }
  return span_contains(cols, v, tol);
}

Eigen::VectorXcd eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("eigenvalues: matrix must be square");
  }
  require_finite(m, "eigenvalues input");
  if (m.rows() == 0) {
    return Eigen::VectorXcd(0);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues: QR iteration did not converge");
  }
  return solver.eigenvalues();
}

double spectral_radius(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  const Eigen::VectorXcd lambdas = eigenvalues(m);
  if (lambdas.size() == 0) {
    return 0.0;
  }
  return lambdas.cwiseAbs().maxCoeff();
}

}  // namespace minstab
