#include "minstab/explorer.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "minstab/lti.hpp"
#include "minstab/rng.hpp"

namespace minstab {
namespace {

LtiSystem running_example() {
  Eigen::MatrixXd a(2, 2);
  a << 2, 0, 0, 0.5;
  Eigen::MatrixXd b(2, 1);
  b << 1, 0;
  return LtiSystem(a, b);
}

TEST(OnlineDataset, AppendValidatesDimensionsAndChaining) {
  OnlineDataset dataset(2, 1);
  const Eigen::Vector2d x0(1, 0);
  const Eigen::Vector2d x1(2, 0);
  dataset.append({x1, x0, Eigen::VectorXd::Zero(1)});

  EXPECT_THROW(dataset.append({x1, Eigen::VectorXd::Zero(3),
                               Eigen::VectorXd::Zero(1)}),
               std::invalid_argument);
  // x of the next triple must equal x_plus of the previous one exactly.
  EXPECT_THROW(dataset.append({x1, Eigen::Vector2d(2, 1e-14),
                               Eigen::VectorXd::Zero(1)}),
               std::invalid_argument);
  EXPECT_NO_THROW(dataset.append({Eigen::Vector2d(5, 0), x1,
                                  Eigen::VectorXd::Ones(1)}));
  EXPECT_EQ(dataset.size(), 2);
}

TEST(OnlineDataset, PrefixAndMatrixViews) {
  OnlineDataset dataset(2, 1);
  dataset.append({Eigen::Vector2d(2, 0), Eigen::Vector2d(1, 0),
                  Eigen::VectorXd::Zero(1)});
  dataset.append({Eigen::Vector2d(5, 0), Eigen::Vector2d(2, 0),
                  Eigen::VectorXd::Ones(1)});

  const OnlineDataset one = dataset.prefix(1);
  EXPECT_EQ(one.size(), 1);
  EXPECT_THROW(dataset.prefix(3), std::invalid_argument);

  EXPECT_EQ(dataset.states().col(1), Eigen::Vector2d(2, 0));
  EXPECT_EQ(dataset.next_states().col(1), Eigen::Vector2d(5, 0));
  EXPECT_EQ(dataset.inputs()(0, 0), 0.0);
  EXPECT_EQ(dataset.inputs()(0, 1), 1.0);
}

TEST(Explore, HandTracedRunOnTheRunningExample) {
  Plant plant(running_example(), Eigen::Vector2d(1, 0));
  const ExplorationReport report = explore(plant);

  EXPECT_EQ(report.steps, 2);
  ASSERT_EQ(report.dataset.size(), 2);
  const auto& t0 = report.dataset.triples()[0];
  EXPECT_EQ(t0.x, Eigen::Vector2d(1, 0));
  EXPECT_EQ(t0.u, Eigen::VectorXd::Zero(1));
  EXPECT_EQ(t0.x_plus, Eigen::Vector2d(2, 0));
  const auto& t1 = report.dataset.triples()[1];
  EXPECT_EQ(t1.x, Eigen::Vector2d(2, 0));
  EXPECT_EQ(t1.u, Eigen::VectorXd::Ones(1));
  EXPECT_EQ(t1.x_plus, Eigen::Vector2d(5, 0));

  ASSERT_EQ(report.excitation_times.size(), 1u);
  EXPECT_EQ(report.excitation_times[0], std::make_pair(1, 1));
}

TEST(Explore, ZeroInputMatrixExcitesEveryCoordinateImmediately) {
  const int m = 3;
  const LtiSystem sys(Eigen::MatrixXd::Identity(2, 2),
                      Eigen::MatrixXd::Zero(2, m));
  Plant plant(sys, Eigen::VectorXd::Zero(2));
  const ExplorationReport report = explore(plant);

  EXPECT_EQ(report.steps, m);
  for (int k = 0; k < m; ++k) {
    const auto& t = report.dataset.triples()[k];
    EXPECT_EQ(t.x, Eigen::VectorXd::Zero(2));
    EXPECT_EQ(t.x_plus, Eigen::VectorXd::Zero(2));
    EXPECT_EQ(t.u, Eigen::VectorXd::Unit(m, k));
    EXPECT_EQ(report.excitation_times[k], std::make_pair(k, k + 1));
  }
}

TEST(Explore, ControllableGenericRunsTakeExactlyNPlusMSteps) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    const int m = 1 + static_cast<int>(seed % 3);
    const LtiSystem sys = random_system(n, m, SystemKind::kControllable, seed);
    auto engine = make_engine(derive_seed(seed, 50));
    Plant plant(sys, gaussian_vector(n, engine));
    EXPECT_EQ(explore(plant).steps, n + m) << "seed " << seed;
  }
}

TEST(Explore, StepCountMatchesTheSubspaceOracleWhenExplorationIsPartial) {
  // x0 inside the controllable subspace keeps the trajectory there, so the
  // step count reflects n_tilde < n.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 3 + static_cast<int>(seed % 4);
    const int m = 1 + static_cast<int>(seed % 2);
    const LtiSystem sys =
        random_system(n, m, SystemKind::kStabilizableUncontrollable, seed);
    auto engine = make_engine(derive_seed(seed, 51));
    const Eigen::MatrixXd reach = reachability_matrix(sys, n);
    const Eigen::VectorXd x0 =
        reach * gaussian_vector(static_cast<int>(reach.cols()), engine);
    const int n_tilde = explorable_subspace(sys, x0).dim();
    ASSERT_LT(n_tilde, n);
    Plant plant(sys, x0);
    EXPECT_EQ(explore(plant).steps, n_tilde + m) << "seed " << seed;
  }
}

TEST(Explore, EveryStepAddsAnIndependentConstraint) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const int m = 1 + static_cast<int>(seed % 3);
    const LtiSystem sys = random_system(n, m, SystemKind::kControllable, seed);
    auto engine = make_engine(derive_seed(seed, 52));
    Plant plant(sys, gaussian_vector(n, engine));
    const ExplorationReport report = explore(plant);

    for (int k = 1; k <= report.steps; ++k) {
      const OnlineDataset prefix = report.dataset.prefix(k);
      Eigen::MatrixXd stacked(m + n, k);
      for (int i = 0; i < k; ++i) {
        stacked.col(i).head(m) = prefix.triples()[i].u;
        stacked.col(i).tail(n) = prefix.triples()[i].x;
      }
      EXPECT_EQ(rank(stacked), k);
    }
  }
}

TEST(Explore, CompletenessFlipsExactlyAtTermination) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    const int m = 1 + static_cast<int>(seed % 3);
    const LtiSystem sys = random_system(n, m, SystemKind::kControllable, seed);
    auto engine = make_engine(derive_seed(seed, 53));
    Plant plant(sys, gaussian_vector(n, engine));
    const ExplorationReport report = explore(plant);

    for (int k = 1; k < report.steps; ++k) {
      EXPECT_FALSE(exploration_complete(report.dataset.prefix(k)));
    }
    EXPECT_TRUE(exploration_complete(report.dataset));
  }
}

TEST(Explore, ZeroInputStatesFormABasisOfAllVisitedStates) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const int m = 1 + static_cast<int>(seed % 3);
    const LtiSystem sys = random_system(n, m, SystemKind::kControllable, seed);
    auto engine = make_engine(derive_seed(seed, 54));
    Plant plant(sys, gaussian_vector(n, engine));
    const ExplorationReport report = explore(plant);

    std::vector<Eigen::VectorXd> free_states;
    for (const auto& t : report.dataset.triples()) {
      if (t.u.norm() == 0.0) free_states.push_back(t.x);
    }
    Eigen::MatrixXd free_mat(n, static_cast<Eigen::Index>(free_states.size()));
    for (std::size_t i = 0; i < free_states.size(); ++i) {
      free_mat.col(static_cast<Eigen::Index>(i)) = free_states[i];
    }
    EXPECT_EQ(rank(free_mat), rank(report.dataset.states()));
  }
}

TEST(Explore, VisitedStatesSpanTheExplorableSubspace) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 3 + static_cast<int>(seed % 4);
    const int m = 1 + static_cast<int>(seed % 2);
    const auto kind = seed % 2 == 0 ? SystemKind::kControllable
                                    : SystemKind::kStabilizableUncontrollable;
    const LtiSystem sys = random_system(n, m, kind, seed);
    auto engine = make_engine(derive_seed(seed, 55));
    const Eigen::VectorXd x0 = gaussian_vector(n, engine);
    Plant plant(sys, x0);
    const ExplorationReport report = explore(plant);

    const SubspaceBasis sub = explorable_subspace(sys, x0);
    const Eigen::MatrixXd visited = report.dataset.states();
    for (Eigen::Index j = 0; j < visited.cols(); ++j) {
      EXPECT_TRUE(span_contains(sub.basis, visited.col(j)));
    }
    for (int j = 0; j < sub.dim(); ++j) {
      EXPECT_TRUE(span_contains(visited, sub.basis.col(j)));
    }
  }
}

TEST(Explore, RecordedInputsReplayToTheSameStates) {
  const LtiSystem sys = random_system(4, 2, SystemKind::kControllable, 17);
  auto engine = make_engine(18);
  const Eigen::VectorXd x0 = gaussian_vector(4, engine);
  Plant plant(sys, x0);
  const ExplorationReport report = explore(plant);

  Plant replay(sys, x0);
  for (const auto& t : report.dataset.triples()) {
    EXPECT_EQ(replay.state(), t.x);
    EXPECT_EQ(replay.apply(t.u), t.x_plus);
  }
}

TEST(InputInformative, SpanMembershipDecidesInformation) {
  OnlineDataset dataset(2, 1);
  dataset.append({Eigen::Vector2d(2, 0), Eigen::Vector2d(1, 0),
                  Eigen::VectorXd::Zero(1)});

  // (u; x_plus) proportional to the existing (u; x) stack adds nothing:
  // (0; 2e1) = 2 * (0; e1).
  EXPECT_FALSE(input_informative(dataset, Eigen::VectorXd::Zero(1)));
  // The unit input makes (1; 2e1) independent of (0; e1).
  EXPECT_TRUE(input_informative(dataset, Eigen::VectorXd::Ones(1)));

  EXPECT_THROW(input_informative(OnlineDataset(2, 1), Eigen::VectorXd::Zero(1)),
               std::invalid_argument);
  EXPECT_THROW(input_informative(dataset, Eigen::VectorXd::Zero(2)),
               std::invalid_argument);
}

TEST(ExplorationComplete, HandCheckedRunningExample) {
  Plant plant(running_example(), Eigen::Vector2d(1, 0));
  const ExplorationReport report = explore(plant);
  // Stacked span {(0; e1), (1; 2e1)} contains (1; 0) and (0; 5e1).
  EXPECT_TRUE(exploration_complete(report.dataset));
  EXPECT_FALSE(exploration_complete(report.dataset.prefix(1)));
}

TEST(ExplorationComplete, ZeroSystemAfterMStepsIsComplete) {
  const LtiSystem sys(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2));
  Plant plant(sys, Eigen::VectorXd::Zero(2));
  const ExplorationReport report = explore(plant);
  EXPECT_EQ(report.steps, 2);
  EXPECT_TRUE(exploration_complete(report.dataset));
}

TEST(ExplorationReport, InvariantsHoldOnRandomRuns) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 1 + static_cast<int>(seed % 6);
    const int m = 1 + static_cast<int>(seed % 3);
    const LtiSystem sys = random_system(n, m, SystemKind::kControllable, seed);
    auto engine = make_engine(derive_seed(seed, 56));
    Plant plant(sys, gaussian_vector(n, engine));
    const ExplorationReport report = explore(plant);

    EXPECT_EQ(report.steps, report.dataset.size());
    ASSERT_EQ(report.excitation_times.size(), static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      EXPECT_EQ(report.excitation_times[j].second, j + 1);
    }
    for (const auto& t : report.dataset.triples()) {
      // Algorithm inputs are zero or a unit coordinate pulse.
      EXPECT_TRUE(t.u.norm() == 0.0 ||
                  (t.u.norm() == 1.0 && t.u.maxCoeff() == 1.0));
    }
  }
}

}  // namespace
}  // namespace minstab
