#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "minstab/matops.hpp"

namespace minstab {

/// Discrete-time plant x_{k+1} = A x_k + B u_k. Immutable after
/// construction; the constructor rejects inconsistent dimensions and
/// non-finite entries.
struct LtiSystem {
  Eigen::MatrixXd a;  // n x n
  Eigen::MatrixXd b;  // n x m

  LtiSystem(Eigen::MatrixXd a_in, Eigen::MatrixXd b_in);

  int state_dim() const { return static_cast<int>(a.rows()); }
  int input_dim() const { return static_cast<int>(b.cols()); }
};

/// Additive i.i.d. Gaussian process noise on the state update. The draw at
/// step k is fully determined by (seed, k), independent of call order.
struct NoiseSpec {
  double std_dev = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Orthonormal basis of a linear subspace of R^ambient_dim.
struct SubspaceBasis {
  int ambient_dim = 0;
  Eigen::MatrixXd basis;  // ambient_dim x dim, orthonormal columns

  int dim() const { return static_cast<int>(basis.cols()); }
};

enum class SystemKind {
  kControllable,
  kStabilizableUncontrollable,
};

/// One noiseless transition A x + B u.
Eigen::VectorXd step(const LtiSystem& sys,
                     const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& u);

/// Noisy transition A x + B u + w_k, w_k ~ N(0, std_dev^2 I) reproducible
/// from (noise.seed, step_index).
Eigen::VectorXd step(const LtiSystem& sys,
                     const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& u,
                     const NoiseSpec& noise, std::uint64_t step_index);

/// Smallest A-invariant subspace containing x0 and the columns of B,
/// computed as the orthonormalized Krylov span
/// {A^j v : 0 <= j <= n-1, v in {x0} u cols(B)} (closure by Cayley-Hamilton).
SubspaceBasis explorable_subspace(const LtiSystem& sys,
                                  const Eigen::Ref<const Eigen::VectorXd>& x0,
                                  const Tolerance& tol = {});

/// PBH test: rank [A - lambda I, B] = n for every eigenvalue with
/// |lambda| >= 1.
bool is_stabilizable(const LtiSystem& sys, const Tolerance& tol = {});

/// The n x (depth * m) block matrix (A^{depth-1} B ... A B  B).
Eigen::MatrixXd reachability_matrix(const LtiSystem& sys, int depth);

/// Seeded random ensemble member. kControllable resamples Gaussian pairs
/// until the controllability matrix has full rank; kStabilizableUncontrollable
/// builds a block upper-triangular pair (controllable top block, stable
/// bottom block with spectral radius in [0.2, 0.9]) in a random orthogonal
/// frame. Throws std::runtime_error if the resample cap is exceeded.
LtiSystem random_system(int n, int m, SystemKind kind, std::uint64_t seed);

/// Online simulation oracle: owns the ground-truth system and current state,
/// hands out one transition per apply(). The explorer only ever sees states
/// and inputs, never (A, B).
class Plant {
 public:
  Plant(LtiSystem sys, Eigen::VectorXd x0,
        std::optional<NoiseSpec> noise = std::nullopt);

  int state_dim() const { return sys_.state_dim(); }
  int input_dim() const { return sys_.input_dim(); }
  const Eigen::VectorXd& state() const { return x_; }
  std::uint64_t steps_taken() const { return k_; }

  /// Applies u at the current step, advances, and returns the new state.
  const Eigen::VectorXd& apply(const Eigen::Ref<const Eigen::VectorXd>& u);

 private:
  LtiSystem sys_;
  Eigen::VectorXd x_;
  std::optional<NoiseSpec> noise_;
  std::uint64_t k_ = 0;
};

}  // namespace minstab
