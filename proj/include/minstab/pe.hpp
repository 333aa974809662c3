#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "minstab/lti.hpp"
#include "minstab/matops.hpp"

namespace minstab {

/// Finite input signal u_0, ..., u_{N}; every sample lives in R^m.
class InputSignal {
 public:
  explicit InputSignal(int input_dim);
  InputSignal(std::vector<Eigen::VectorXd> samples, int input_dim);

  void append(const Eigen::VectorXd& u);

  const std::vector<Eigen::VectorXd>& samples() const { return samples_; }
  int input_dim() const { return input_dim_; }
  int size() const { return static_cast<int>(samples_.size()); }
  bool empty() const { return samples_.empty(); }

 private:
  std::vector<Eigen::VectorXd> samples_;
  int input_dim_ = 0;
};

/// Block-Hankel arrangement of depth L: block (i, j) is sample u_{i+j}.
struct HankelBlock {
  int depth = 0;
  Eigen::MatrixXd matrix;  // (L*m) x (size - L + 1)
};

HankelBlock hankel(const InputSignal& signal, int depth);

/// Persistency of excitation of order L: the depth-L Hankel matrix has full
/// row rank L*m.
bool is_pe(const InputSignal& signal, int depth, const Tolerance& tol = {});

/// Shortest Gaussian signal that is PE of order L, grown one sample at a
/// time from the square-or-wider Hankel length L*(m+1) - 1. Throws if the
/// signal reaches 4*L*(m+1) samples without becoming PE.
InputSignal make_pe_signal(int input_dim, int depth, std::uint64_t seed);

/// Drives the system from x0 with the given signal (noiseless), then checks
/// whether the resulting dataset pins down the optimal identifiable set.
/// A signal that is PE of order n + 1 is guaranteed to yield true; other
/// signals (a zero signal, say) are allowed and typically yield false.
bool pe_identification_trial(const LtiSystem& sys,
                             const Eigen::Ref<const Eigen::VectorXd>& x0,
                             const InputSignal& signal,
                             const Tolerance& tol = {});

struct ComparisonRow {
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  int n_tilde = 0;
  int alg1_steps = 0;
  int pe_min_length = 0;
  int bound_paper = 0;   // 2(n+1)m - 1
  int bound_hankel = 0;  // (n+1)(m+1) - 2
};

struct ComparisonSummary {
  std::vector<ComparisonRow> rows;
  int min_pe_length = 0;
  double median_pe_length = 0.0;
};

/// For each seed, measures the shortest prefix of a random Gaussian signal
/// whose trajectory from x0 achieves optimal identification, next to the
/// fast-exploration step count on the same system. Both a priori length
/// bounds are recorded for display; neither is asserted.
ComparisonSummary minimal_length_comparison(
    const LtiSystem& sys, const Eigen::Ref<const Eigen::VectorXd>& x0,
    const std::vector<std::uint64_t>& seeds, const Tolerance& tol = {});

}  // namespace minstab
