#include "minstab/lti.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "minstab/rng.hpp"

namespace minstab {
namespace {

constexpr int kResampleCap = 256;

// Numerical rank of a complex matrix under the same threshold rule as
// matops::rank. Internal to the PBH test; system data itself stays real.
int complex_rank(const Eigen::MatrixXcd& m, const Tolerance& tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> dec(m);
  const double threshold =
      rank_threshold(m.rows(), m.cols(), dec.singularValues()(0), tol);
  int r = 0;
  for (Eigen::Index i = 0; i < dec.singularValues().size(); ++i) {
    if (dec.singularValues()(i) > threshold) ++r;
  }
  return r;
}

bool is_controllable(const LtiSystem& sys, const Tolerance& tol) {
  return rank(reachability_matrix(sys, sys.state_dim()), tol) ==
         sys.state_dim();
}

}  // namespace

LtiSystem::LtiSystem(Eigen::MatrixXd a_in, Eigen::MatrixXd b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("LtiSystem: A must be square");
  }
  if (b.rows() != a.rows()) {
    throw std::invalid_argument("LtiSystem: B row count must match A");
  }
  require_finite(a, "LtiSystem A");
  require_finite(b, "LtiSystem B");
}

void NoiseSpec::validate() const {
  if (!std::isfinite(std_dev) || std_dev < 0.0) {
    throw std::invalid_argument("NoiseSpec: std_dev must be finite and >= 0");
  }
}

Eigen::VectorXd step(const LtiSystem& sys,
                     const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& u) {
  if (x.size() != sys.state_dim() || u.size() != sys.input_dim()) {
    throw std::invalid_argument("step: dimension mismatch");
  }
  return sys.a * x + sys.b * u;
}

Eigen::VectorXd step(const LtiSystem& sys,
                     const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& u,
                     const NoiseSpec& noise, std::uint64_t step_index) {
  noise.validate();
  Eigen::VectorXd next = step(sys, x, u);
  if (noise.std_dev > 0.0) {
    auto engine = make_engine(derive_seed(noise.seed, step_index));
    next += noise.std_dev * gaussian_vector(sys.state_dim(), engine);
  }
  return next;
}

SubspaceBasis explorable_subspace(const LtiSystem& sys,
                                  const Eigen::Ref<const Eigen::VectorXd>& x0,
                                  const Tolerance& tol) {
  const int n = sys.state_dim();
  const int m = sys.input_dim();
  if (x0.size() != n) {
    throw std::invalid_argument("explorable_subspace: x0 dimension mismatch");
  }
  require_finite(x0, "explorable_subspace x0");

  // Krylov block: generators G = [x0, B], columns A^j G for j = 0..n-1.
  Eigen::MatrixXd generators(n, 1 + m);
  generators.col(0) = x0;
  generators.rightCols(m) = sys.b;
  Eigen::MatrixXd krylov(n, static_cast<Eigen::Index>(n) * (1 + m));
  Eigen::MatrixXd block = generators;
  for (int j = 0; j < n; ++j) {
    krylov.middleCols(static_cast<Eigen::Index>(j) * (1 + m), 1 + m) = block;
    if (j + 1 < n) block = sys.a * block;
  }

  const SvdResult dec = svd(krylov);
  const double threshold =
      dec.singular_values.size() == 0
          ? 0.0
          : rank_threshold(krylov.rows(), krylov.cols(),
                           dec.singular_values(0), tol);
  int r = 0;
  for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
    if (dec.singular_values(i) > threshold) ++r;
  }
  return SubspaceBasis{n, dec.u.leftCols(r)};
}

bool is_stabilizable(const LtiSystem& sys, const Tolerance& tol) {
  const int n = sys.state_dim();
  const int m = sys.input_dim();
  const Eigen::VectorXcd lambdas = eigenvalues(sys.a);
  Eigen::MatrixXcd pencil(n, n + m);
  pencil.rightCols(m) = sys.b.cast<std::complex<double>>();
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    if (std::abs(lambdas(i)) < 1.0) continue;
    pencil.leftCols(n) = sys.a.cast<std::complex<double>>();
    pencil.leftCols(n).diagonal().array() -= lambdas(i);
    if (complex_rank(pencil, tol) < n) return false;
  }
  return true;
}

Eigen::MatrixXd reachability_matrix(const LtiSystem& sys, int depth) {
  if (depth < 1) {
    throw std::invalid_argument("reachability_matrix: depth must be >= 1");
  }
  const int n = sys.state_dim();
  const int m = sys.input_dim();
  Eigen::MatrixXd r(n, static_cast<Eigen::Index>(depth) * m);
  // Rightmost block is B, leftward blocks multiply by A.
  r.rightCols(m) = sys.b;
  for (int j = 1; j < depth; ++j) {
    r.middleCols(static_cast<Eigen::Index>(depth - 1 - j) * m, m) =
        sys.a * r.middleCols(static_cast<Eigen::Index>(depth - j) * m, m);
  }
  return r;
}

LtiSystem random_system(int n, int m, SystemKind kind, std::uint64_t seed) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("random_system: n and m must be >= 1");
  }
  const Tolerance tol{};
  auto engine = make_engine(derive_seed(seed, 0));

  if (kind == SystemKind::kControllable) {
    for (int attempt = 0; attempt < kResampleCap; ++attempt) {
      LtiSystem sys(gaussian_matrix(n, n, engine) / std::sqrt(double(n)),
                    gaussian_matrix(n, m, engine));
      if (is_controllable(sys, tol)) return sys;
    }
    throw std::runtime_error("random_system: controllable resample cap hit");
  }

  if (n < 2) {
    throw std::invalid_argument(
        "random_system: stabilizable_uncontrollable needs n >= 2");
  }
  for (int attempt = 0; attempt < kResampleCap; ++attempt) {
    std::uniform_int_distribution<int> pick_dim(1, n - 1);
    const int nc = pick_dim(engine);  // controllable block dimension
    const int nu = n - nc;

    const Eigen::MatrixXd a11 =
        gaussian_matrix(nc, nc, engine) / std::sqrt(double(nc));
    const Eigen::MatrixXd b1 = gaussian_matrix(nc, m, engine);
    const Eigen::MatrixXd a12 = gaussian_matrix(nc, nu, engine);

    std::uniform_real_distribution<double> pick_radius(0.2, 0.9);
    const double target_radius = pick_radius(engine);
    Eigen::MatrixXd a22 = gaussian_matrix(nu, nu, engine);
    const double rho = spectral_radius(a22);
    if (rho <= 1e-12) continue;
    a22 *= target_radius / rho;

    if (!is_controllable(LtiSystem(a11, b1), tol)) continue;

    Eigen::MatrixXd a_block = Eigen::MatrixXd::Zero(n, n);
    a_block.topLeftCorner(nc, nc) = a11;
    a_block.topRightCorner(nc, nu) = a12;
    a_block.bottomRightCorner(nu, nu) = a22;
    Eigen::MatrixXd b_block = Eigen::MatrixXd::Zero(n, m);
    b_block.topRows(nc) = b1;

    const Eigen::MatrixXd t = random_orthogonal(n, engine);
    LtiSystem sys(t * a_block * t.transpose(), t * b_block);
    if (is_stabilizable(sys, tol) && !is_controllable(sys, tol)) return sys;
  }
  throw std::runtime_error(
      "random_system: stabilizable_uncontrollable resample cap hit");
}

Plant::Plant(LtiSystem sys, Eigen::VectorXd x0, std::optional<NoiseSpec> noise)
    : sys_(std::move(sys)), x_(std::move(x0)), noise_(noise) {
  if (x_.size() != sys_.state_dim()) {
    throw std::invalid_argument("Plant: x0 dimension mismatch");
  }
  require_finite(x_, "Plant x0");
  if (noise_) noise_->validate();
}

const Eigen::VectorXd& Plant::apply(
    const Eigen::Ref<const Eigen::VectorXd>& u) {
  if (noise_) {
    x_ = step(sys_, x_, u, *noise_, k_);
  } else {
    x_ = step(sys_, x_, u);
  }
  ++k_;
  return x_;
}

}  // namespace minstab
