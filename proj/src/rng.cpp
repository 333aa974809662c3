#include "minstab/rng.hpp"

#include <Eigen/Dense>

namespace minstab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base + stream * 0x9e3779b97f4a7c15ULL);
}

std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

Eigen::VectorXd gaussian_vector(int dim, std::mt19937_64& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = normal(engine);
  }
  return v;
}

Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::mt19937_64& engine) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      m(i, j) = normal(engine);
    }
  }
  return m;
}

Eigen::MatrixXd random_orthogonal(int dim, std::mt19937_64& engine) {
  const Eigen::MatrixXd g = gaussian_matrix(dim, dim, engine);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace minstab
