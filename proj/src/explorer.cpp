#include "minstab/explorer.hpp"

#include <stdexcept>

namespace minstab {
namespace {

// Columns (u_k; x_k) of the dataset, input on top, in R^{m+n}.
Eigen::MatrixXd input_state_columns(const OnlineDataset& dataset) {
  const int n = dataset.state_dim();
  const int m = dataset.input_dim();
  Eigen::MatrixXd cols(m + n, dataset.size());
  for (int k = 0; k < dataset.size(); ++k) {
    cols.col(k).head(m) = dataset.triples()[k].u;
    cols.col(k).tail(n) = dataset.triples()[k].x;
  }
  return cols;
}

}  // namespace

OnlineDataset::OnlineDataset(int n, int m) : n_(n), m_(m) {
  if (n < 0 || m < 0) {
    throw std::invalid_argument("OnlineDataset: negative dimensions");
  }
}

void OnlineDataset::append(DataTriple triple) {
  if (triple.x.size() != n_ || triple.x_plus.size() != n_ ||
      triple.u.size() != m_) {
    throw std::invalid_argument("OnlineDataset: triple dimension mismatch");
  }
  if (!triples_.empty() && triple.x != triples_.back().x_plus) {
    throw std::invalid_argument(
        "OnlineDataset: triple breaks the single-trajectory chaining");
  }
  triples_.push_back(std::move(triple));
}

OnlineDataset OnlineDataset::prefix(int count) const {
  if (count < 0 || count > size()) {
    throw std::invalid_argument("OnlineDataset: prefix length out of range");
  }
  OnlineDataset out(n_, m_);
  for (int k = 0; k < count; ++k) {
    out.append(triples_[k]);
  }
  return out;
}

Eigen::MatrixXd OnlineDataset::states() const {
  Eigen::MatrixXd x(n_, size());
  for (int k = 0; k < size(); ++k) x.col(k) = triples_[k].x;
  return x;
}

Eigen::MatrixXd OnlineDataset::next_states() const {
  Eigen::MatrixXd xp(n_, size());
  for (int k = 0; k < size(); ++k) xp.col(k) = triples_[k].x_plus;
  return xp;
}

Eigen::MatrixXd OnlineDataset::inputs() const {
  Eigen::MatrixXd u(m_, size());
  for (int k = 0; k < size(); ++k) u.col(k) = triples_[k].u;
  return u;
}

ExplorationReport explore(Plant& plant, const Tolerance& tol) {
  const int n = plant.state_dim();
  const int m = plant.input_dim();
  const int step_cap = 2 * (n + m) + 4;

  ExplorationReport report{OnlineDataset(n, m), 0, {}};
  Eigen::MatrixXd past_states(n, 0);  // columns x_0 .. x_{k-1}
  int next_coordinate = 1;            // next unit pulse to spend, 1..m

  for (int k = 0;; ++k) {
    if (k >= step_cap) {
      throw ExplorationError("explore: step cap exceeded", report);
    }
    const Eigen::VectorXd x = plant.state();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
    // Span{x_{k-1}, ..., x_0, 0}: the zero seed is the empty-span convention.
    if (span_contains(past_states, x, tol)) {
      if (next_coordinate > m) break;
      u(next_coordinate - 1) = 1.0;
      report.excitation_times.emplace_back(k, next_coordinate);
      ++next_coordinate;
    }
    const Eigen::VectorXd x_plus = plant.apply(u);
    report.dataset.append(DataTriple{x_plus, x, u});
    past_states.conservativeResize(n, k + 1);
    past_states.col(k) = x;
  }
  report.steps = report.dataset.size();
  return report;
}

bool input_informative(const OnlineDataset& dataset,
                       const Eigen::Ref<const Eigen::VectorXd>& u_next,
                       const Tolerance& tol) {
  if (dataset.empty()) {
    throw std::invalid_argument("input_informative: dataset is empty");
  }
  if (u_next.size() != dataset.input_dim()) {
    throw std::invalid_argument("input_informative: input dimension mismatch");
  }
  const int n = dataset.state_dim();
  const int m = dataset.input_dim();
  Eigen::VectorXd candidate(m + n);
  candidate.head(m) = u_next;
  candidate.tail(n) = dataset.triples().back().x_plus;
  return !span_contains(input_state_columns(dataset), candidate, tol);
}

bool exploration_complete(const OnlineDataset& dataset, const Tolerance& tol) {
  if (dataset.empty()) {
    throw std::invalid_argument("exploration_complete: dataset is empty");
  }
  const int n = dataset.state_dim();
  const int m = dataset.input_dim();
  const Eigen::MatrixXd span = input_state_columns(dataset);

  // (u~; x_plus_last) in span for all u~  <=>  the u~ = 0 instance plus all
  // coordinate differences (e_j; 0) are in the span.
  Eigen::VectorXd probe = Eigen::VectorXd::Zero(m + n);
  probe.tail(n) = dataset.triples().back().x_plus;
  if (!span_contains(span, probe, tol)) return false;
  for (int j = 0; j < m; ++j) {
    probe.setZero();
    probe(j) = 1.0;
    if (!span_contains(span, probe, tol)) return false;
  }
  return true;
}

}  // namespace minstab
