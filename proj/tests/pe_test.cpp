#include "minstab/pe.hpp"

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "minstab/lti.hpp"
#include "minstab/matops.hpp"
#include "minstab/rng.hpp"
#include "oracles.hpp"

namespace minstab {
namespace {

InputSignal scalar_signal(std::initializer_list<double> values) {
  InputSignal signal(1);
  for (double v : values) {
    signal.append(Eigen::VectorXd::Constant(1, v));
  }
  return signal;
}

TEST(InputSignal, ValidatesSamples) {
  EXPECT_THROW(InputSignal(0), std::invalid_argument);
  InputSignal signal(2);
  EXPECT_TRUE(signal.empty());
  EXPECT_THROW(signal.append(Eigen::VectorXd::Zero(3)), std::invalid_argument);
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(2);
  bad(0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(signal.append(bad), std::invalid_argument);
  signal.append(Eigen::VectorXd::Ones(2));
  EXPECT_EQ(signal.size(), 1);
  EXPECT_EQ(signal.input_dim(), 2);
}

TEST(Hankel, ScalarDepthTwoLayout) {
  const InputSignal signal = scalar_signal({1, 2, 3});
  const HankelBlock block = hankel(signal, 2);
  EXPECT_EQ(block.depth, 2);
  Eigen::MatrixXd expected(2, 2);
  expected << 1, 2, 2, 3;
  EXPECT_EQ(block.matrix, expected);
}

TEST(Hankel, DepthOneStacksSamplesAsColumns) {
  InputSignal signal(2);
  signal.append((Eigen::VectorXd(2) << 1, 2).finished());
  signal.append((Eigen::VectorXd(2) << 3, 4).finished());
  const HankelBlock block = hankel(signal, 1);
  ASSERT_EQ(block.matrix.rows(), 2);
  ASSERT_EQ(block.matrix.cols(), 2);
  EXPECT_EQ(block.matrix(0, 0), 1);
  EXPECT_EQ(block.matrix(1, 1), 4);
}

TEST(Hankel, BlockEntriesComeFromShiftedSamples) {
  auto engine = make_engine(90);
  InputSignal signal(2);
  for (int i = 0; i < 4; ++i) {
    signal.append(gaussian_vector(2, engine));
  }
  const HankelBlock block = hankel(signal, 2);
  ASSERT_EQ(block.matrix.rows(), 4);
  ASSERT_EQ(block.matrix.cols(), 3);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int r = 0; r < 2; ++r) {
        EXPECT_EQ(block.matrix(2 * i + r, j),
                  signal.samples()[static_cast<std::size_t>(i + j)](r));
      }
    }
  }
}

TEST(Hankel, RejectsBadDepths) {
  const InputSignal signal = scalar_signal({1, 2});
  EXPECT_THROW(hankel(signal, 0), std::invalid_argument);
  EXPECT_THROW(hankel(signal, 3), std::invalid_argument);
}

TEST(IsPe, ZeroAndConstantSignalsAreNotExciting) {
  EXPECT_FALSE(is_pe(scalar_signal({0, 0, 0}), 1));
  EXPECT_FALSE(is_pe(scalar_signal({1, 1, 1, 1}), 2));
  EXPECT_TRUE(is_pe(scalar_signal({1, 1, 1, 1}), 1));
}

TEST(IsPe, GenericGaussianSignalsAreExciting) {
  auto engine = make_engine(91);
  for (int m = 1; m <= 3; ++m) {
    for (int depth = 1; depth <= 3; ++depth) {
      InputSignal signal(m);
      const int length = depth * (m + 1) - 1;
      for (int i = 0; i < length; ++i) {
        signal.append(gaussian_vector(m, engine));
      }
      EXPECT_TRUE(is_pe(signal, depth)) << "m=" << m << " depth=" << depth;
    }
  }
}

TEST(MakePeSignal, ShortestOrderOneSignalIsOneNonzeroSample) {
  const InputSignal signal = make_pe_signal(1, 1, 5);
  EXPECT_EQ(signal.size(), 1);
  EXPECT_GT(signal.samples()[0].norm(), 0.0);
  EXPECT_TRUE(is_pe(signal, 1));
}

TEST(MakePeSignal, SatisfiesItsPostconditionAcrossOrders) {
  for (int m = 1; m <= 3; ++m) {
    for (int depth = 1; depth <= 4; ++depth) {
      const InputSignal signal =
          make_pe_signal(m, depth, 100 * static_cast<std::uint64_t>(m) + depth);
      EXPECT_GE(signal.size(), depth * (m + 1) - 1);
      EXPECT_LE(signal.size(), 4 * depth * (m + 1));
      EXPECT_TRUE(is_pe(signal, depth));
    }
  }
  EXPECT_THROW(make_pe_signal(1, 0, 0), std::invalid_argument);
}

TEST(MakePeSignal, ExcitationOrderIsDownwardClosed) {
  for (int depth = 2; depth <= 4; ++depth) {
    const InputSignal signal = make_pe_signal(2, depth, 7);
    for (int lower = 1; lower < depth; ++lower) {
      EXPECT_TRUE(is_pe(signal, lower));
    }
  }
}

TEST(PeIdentificationTrial, PeOfOrderNPlusOneIdentifies) {
  auto engine = make_engine(92);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(engine() % 4);
    const int m = 1 + static_cast<int>(engine() % 3);
    const LtiSystem sys =
        random_system(n, m, SystemKind::kControllable, engine());
    const Eigen::VectorXd x0 = gaussian_vector(n, engine);
    const InputSignal signal = make_pe_signal(m, n + 1, engine());
    EXPECT_TRUE(pe_identification_trial(sys, x0, signal));
  }
}

TEST(PeIdentificationTrial, CoversPartiallyExplorableStarts) {
  auto engine = make_engine(93);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + static_cast<int>(engine() % 4);
    const int m = 1 + static_cast<int>(engine() % 2);
    const LtiSystem sys = random_system(
        n, m, SystemKind::kStabilizableUncontrollable, engine());
    const Eigen::VectorXd x0 = testing::controllable_state(sys, engine);
    const InputSignal signal = make_pe_signal(m, n + 1, engine());
    EXPECT_TRUE(pe_identification_trial(sys, x0, signal));
  }
}

TEST(PeIdentificationTrial, ZeroSignalFromTheOriginFails) {
  const LtiSystem sys = random_system(3, 1, SystemKind::kControllable, 17);
  InputSignal zero(1);
  for (int i = 0; i < 4; ++i) {
    zero.append(Eigen::VectorXd::Zero(1));
  }
  EXPECT_FALSE(pe_identification_trial(sys, Eigen::VectorXd::Zero(3), zero));

  InputSignal wrong_dim(2);
  wrong_dim.append(Eigen::VectorXd::Zero(2));
  EXPECT_THROW(
      pe_identification_trial(sys, Eigen::VectorXd::Zero(3), wrong_dim),
      std::invalid_argument);
}

TEST(MinimalLengthComparison, RandomInputsNeverBeatFastExploration) {
  const LtiSystem sys = random_system(2, 1, SystemKind::kControllable, 23);
  auto engine = make_engine(24);
  const Eigen::VectorXd x0 = gaussian_vector(2, engine);
  std::vector<std::uint64_t> seeds(50);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    seeds[i] = i;
  }
  const ComparisonSummary summary = minimal_length_comparison(sys, x0, seeds);
  ASSERT_EQ(summary.rows.size(), seeds.size());
  for (const ComparisonRow& row : summary.rows) {
    EXPECT_EQ(row.n, 2);
    EXPECT_EQ(row.m, 1);
    EXPECT_EQ(row.n_tilde, 2);
    EXPECT_EQ(row.alg1_steps, 3);
    EXPECT_GE(row.pe_min_length, row.alg1_steps);
    EXPECT_EQ(row.bound_paper, 5);
    EXPECT_EQ(row.bound_hankel, 4);
  }
  EXPECT_GE(summary.min_pe_length, 3);
  EXPECT_GE(summary.median_pe_length, summary.min_pe_length);
}

TEST(MinimalLengthComparison, ScalarSystemsIdentifyInTwoSteps) {
  const LtiSystem sys = random_system(1, 1, SystemKind::kControllable, 31);
  Eigen::VectorXd x0(1);
  x0 << 1.0;
  const ComparisonSummary summary =
      minimal_length_comparison(sys, x0, {1, 2, 3});
  for (const ComparisonRow& row : summary.rows) {
    EXPECT_EQ(row.alg1_steps, 2);
    EXPECT_GE(row.pe_min_length, 2);
    EXPECT_EQ(row.bound_paper, 3);
    EXPECT_EQ(row.bound_hankel, 2);
  }
}

}  // namespace
}  // namespace minstab
