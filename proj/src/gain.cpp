#include "minstab/gain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "minstab/matops.hpp"

namespace minstab {

namespace {

// One Riccati step. gain_out receives -(R + B^T P B)^{-1} B^T P A.
Eigen::MatrixXd riccati_step(const Eigen::MatrixXd& a,
                             const Eigen::MatrixXd& b,
                             const Eigen::MatrixXd& q,
                             const Eigen::MatrixXd& r,
                             const Eigen::MatrixXd& p,
                             Eigen::MatrixXd* gain_out = nullptr) {
  const Eigen::MatrixXd btp = b.transpose() * p;
  Eigen::MatrixXd inner = r + btp * b;
  inner = 0.5 * (inner + inner.transpose().eval());
  Eigen::LLT<Eigen::MatrixXd> llt(inner);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("riccati_step: R + B^T P B is not positive definite");
  }
  const Eigen::MatrixXd gain = -llt.solve(btp * a);
  if (gain_out != nullptr) {
    *gain_out = gain;
  }
  Eigen::MatrixXd next =
      a.transpose() * p * a + (a.transpose() * btp.transpose()) * gain + q;
  next = 0.5 * (next + next.transpose().eval());
  return next;
}

}  // namespace

DareSolution solve_dare(const Eigen::Ref<const Eigen::MatrixXd>& a,
                        const Eigen::Ref<const Eigen::MatrixXd>& b,
                        const Eigen::Ref<const Eigen::MatrixXd>& q,
                        const Eigen::Ref<const Eigen::MatrixXd>& r,
                        const DareOptions& options) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  if (a.cols() != n) {
    throw std::invalid_argument("solve_dare: A must be square");
  }
  if (b.rows() != n) {
    throw std::invalid_argument("solve_dare: B row count must match A");
  }
  if (q.rows() != n || q.cols() != n) {
    throw std::invalid_argument("solve_dare: Q must be n x n");
  }
  if (r.rows() != m || r.cols() != m) {
    throw std::invalid_argument("solve_dare: R must be m x m");
  }
  if (options.tolerance <= 0.0 || options.max_iterations <= 0) {
    throw std::invalid_argument("solve_dare: options must be positive");
  }
  require_finite(a, "solve_dare: A");
  require_finite(b, "solve_dare: B");
  require_finite(q, "solve_dare: Q");
  require_finite(r, "solve_dare: R");

  const Eigen::MatrixXd a_mat = a;
  const Eigen::MatrixXd b_mat = b;
  const Eigen::MatrixXd q_mat = 0.5 * (q + q.transpose().eval());
  const Eigen::MatrixXd r_mat = 0.5 * (r + r.transpose().eval());

  DareSolution sol;
  sol.p = q_mat;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const Eigen::MatrixXd next = riccati_step(a_mat, b_mat, q_mat, r_mat, sol.p);
    require_finite(next, "solve_dare: iterate");
    sol.residual = (next - sol.p).norm();
    sol.p = next;
    sol.iterations = it;
    if (sol.residual < options.tolerance) {
      return sol;
    }
  }
  throw std::runtime_error(
      "solve_dare: no convergence after " +
      std::to_string(options.max_iterations) +
      " iterations, last residual " + std::to_string(sol.residual));
}

GainResult synthesize(const Estimate& est, double q_weight, double r_weight,
                      double tol) {
  if (q_weight <= 0.0 || r_weight <= 0.0) {
    throw std::invalid_argument("synthesize: weights must be positive");
  }
  const Eigen::Index n = est.a_hat.rows();
  const Eigen::Index m = est.b_hat.cols();
  const LtiSystem est_sys(est.a_hat, est.b_hat);
  if (!is_stabilizable(est_sys)) {
    throw std::runtime_error("synthesize: estimate is not stabilizable");
  }

  const Eigen::MatrixXd q = q_weight * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = r_weight * Eigen::MatrixXd::Identity(m, m);
  DareOptions options;
  options.tolerance = tol;
  const DareSolution sol = solve_dare(est.a_hat, est.b_hat, q, r, options);

  GainResult result;
  const Eigen::MatrixXd fixed_point =
      riccati_step(est.a_hat, est.b_hat, q, r, sol.p, &result.k);
  result.riccati_residual = (fixed_point - sol.p).norm();
  result.closed_loop_radius_est =
      spectral_radius(est.a_hat + est.b_hat * result.k);
  if (!(result.closed_loop_radius_est < 1.0)) {
    throw std::runtime_error(
        "synthesize: closed-loop radius " +
        std::to_string(result.closed_loop_radius_est) + " is not below 1");
  }
  return result;
}

double certify(const LtiSystem& sys,
               const Eigen::Ref<const Eigen::MatrixXd>& k) {
  if (k.rows() != sys.input_dim() || k.cols() != sys.state_dim()) {
    throw std::invalid_argument("certify: gain must be m x n");
  }
  require_finite(k, "certify: K");
  return spectral_radius(sys.a + sys.b * k);
}

}  // namespace minstab
