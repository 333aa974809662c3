#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "minstab/lti.hpp"
#include "minstab/matops.hpp"

namespace minstab {

/// One observed transition (x_plus, x, u) with x_plus = A x + B u.
struct DataTriple {
  Eigen::VectorXd x_plus;
  Eigen::VectorXd x;
  Eigen::VectorXd u;
};

/// Ordered transitions from a single trajectory: the state of triple k+1 is
/// exactly (bitwise) the x_plus of triple k. append() enforces dimension
/// consistency and the chaining invariant.
class OnlineDataset {
 public:
  OnlineDataset(int n, int m);

  void append(DataTriple triple);

  const std::vector<DataTriple>& triples() const { return triples_; }
  int state_dim() const { return n_; }
  int input_dim() const { return m_; }
  int size() const { return static_cast<int>(triples_.size()); }
  bool empty() const { return triples_.empty(); }

  /// First `count` triples as a dataset of their own.
  OnlineDataset prefix(int count) const;

  /// X  = (x_0 ... x_{N-1}), n x N.
  Eigen::MatrixXd states() const;
  /// X+ = (x_0^+ ... x_{N-1}^+), n x N.
  Eigen::MatrixXd next_states() const;
  /// U  = (u_0 ... u_{N-1}), m x N.
  Eigen::MatrixXd inputs() const;

 private:
  int n_;
  int m_;
  std::vector<DataTriple> triples_;
};

/// Transcript of one fast-exploration run. excitation_times lists, in order,
/// the (0-based step index, 1-based input coordinate) pairs at which a unit
/// input was applied; a completed run has exactly m entries with coordinates
/// 1..m.
struct ExplorationReport {
  OnlineDataset dataset;
  int steps = 0;
  std::vector<std::pair<int, int>> excitation_times;
};

/// Thrown when the exploration step cap is exceeded (reachable only when
/// noise or tolerance pathologies keep the span test from firing). Carries
/// the partial transcript so callers can still estimate from it.
class ExplorationError : public std::runtime_error {
 public:
  ExplorationError(std::string message, ExplorationReport partial)
      : std::runtime_error(std::move(message)),
        partial_report(std::move(partial)) {}

  ExplorationReport partial_report;
};

/// Fast exploration: starting from the plant's current state, waits with
/// u = 0 while states remain novel; each time the current state falls into
/// the span of its predecessors (and the zero vector), excites the next
/// input coordinate with a unit pulse, until all m coordinates are spent.
/// On a noiseless plant this terminates after exactly
/// dim(explorable subspace) + m interactions.
ExplorationReport explore(Plant& plant, const Tolerance& tol = {});

/// True iff appending a transition driven by u_next would add an
/// independent constraint, i.e. (u_next; x_plus_last) is outside
/// span{(u_k; x_k)} of the dataset.
bool input_informative(const OnlineDataset& dataset,
                       const Eigen::Ref<const Eigen::VectorXd>& u_next,
                       const Tolerance& tol = {});

/// True iff no input can add information any more: (u~; x_plus_last) lies in
/// span{(u_k; x_k)} for every u~, checked via membership of (0; x_plus_last)
/// and of every coordinate direction (e_j; 0).
bool exploration_complete(const OnlineDataset& dataset,
                          const Tolerance& tol = {});

}  // namespace minstab
