#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace minstab {

// All randomness in the library flows through std::mt19937_64 engines whose
// seeds are derived with derive_seed. The stream-splitting rule is:
// stream k of base seed s is seeded with splitmix64(s + k * 0x9e3779b97f4a7c15).
// Two streams with distinct k never share state, and the same (s, k) always
// reproduces the same draws.

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

std::mt19937_64 make_engine(std::uint64_t seed);

/// dim-vector of i.i.d. standard normal draws.
Eigen::VectorXd gaussian_vector(int dim, std::mt19937_64& engine);

/// rows x cols matrix of i.i.d. standard normal draws (column-major fill).
Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::mt19937_64& engine);

/// Haar-ish random orthogonal matrix (QR of a Gaussian matrix with the
/// sign-fixed R diagonal).
Eigen::MatrixXd random_orthogonal(int dim, std::mt19937_64& engine);

}  // namespace minstab
