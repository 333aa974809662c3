#pragma once

#include <optional>

#include <Eigen/Core>

#include "minstab/identify.hpp"
#include "minstab/lti.hpp"

namespace minstab {

struct DareOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

struct DareSolution {
  Eigen::MatrixXd p;  // stabilizing solution, symmetric PSD
  double residual = 0.0;  // Frobenius distance moved by one more iteration
  int iterations = 0;
};

/// Stabilizing feedback gain for u = K x, with the certified spectral radii.
/// closed_loop_radius_true is filled by the caller once the ground truth is
/// available (oracle side); synthesis itself never sees the true system.
struct GainResult {
  Eigen::MatrixXd k;  // m x n
  double closed_loop_radius_est = 0.0;
  std::optional<double> closed_loop_radius_true;
  double riccati_residual = 0.0;
};

/// Fixed-point iteration of the Riccati recursion
///   P <- A^T P A - A^T P B (R + B^T P B)^{-1} B^T P A + Q
/// from P = Q, until successive iterates differ by less than
/// options.tolerance in Frobenius norm. Throws std::runtime_error with the
/// last residual if the iteration cap is exceeded.
DareSolution solve_dare(const Eigen::Ref<const Eigen::MatrixXd>& a,
                        const Eigen::Ref<const Eigen::MatrixXd>& b,
                        const Eigen::Ref<const Eigen::MatrixXd>& q,
                        const Eigen::Ref<const Eigen::MatrixXd>& r,
                        const DareOptions& options = {});

/// LQR synthesis for the estimate with Q = q_weight * I, R = r_weight * I:
/// K = -(R + B^T P B)^{-1} B^T P A, certified via the closed-loop spectral
/// radius. Throws std::runtime_error if the estimate is not stabilizable or
/// the certified radius is not below 1.
GainResult synthesize(const Estimate& est, double q_weight = 1.0,
                      double r_weight = 1.0, double tol = 1e-10);

/// Closed-loop spectral radius of the true system under u = K x.
double certify(const LtiSystem& sys,
               const Eigen::Ref<const Eigen::MatrixXd>& k);

}  // namespace minstab
