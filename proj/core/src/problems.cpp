#include "speig/problems.hpp"

#include "speig/linalg.hpp"
#include "speig/manifold.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace speig {

namespace {

Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) g(i, j) = dist(rng);
  }
  return g;
}

ComplexMatrix complex_gaussian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      g(i, j) = std::complex<double>(dist(rng), dist(rng)) / std::sqrt(2.0);
    }
  }
  return g;
}

ComplexMatrix haar_unitary(Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(complex_gaussian(n, rng));
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const std::complex<double> z = r(j, j);
    const double az = std::abs(z);
    if (az > 0.0) q.col(j) *= std::conj(z) / az;
  }
  return q;
}

Matrix embed_unitary(const ComplexMatrix& u) {
  const Index n = u.rows();
  Matrix k(2 * n, 2 * n);
  k.topLeftCorner(n, n) = u.real();
  k.topRightCorner(n, n) = u.imag();
  k.bottomLeftCorner(n, n) = -u.imag();
  k.bottomRightCorner(n, n) = u.real();
  return k;
}

}  // namespace

KnownSpectrumProblem known_spectrum_matrix(Index n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("known_spectrum_matrix: n must be positive");
  }
  std::mt19937_64 rng(seed);

  const Matrix k = embed_unitary(haar_unitary(n, rng));

  // Shear factor [I C; 0 I]: symplectic for any symmetric C; scaling the
  // spectral radius of C to 9.9 pins its condition number at 100.
  Matrix c = gaussian(n, n, rng);
  c = 0.5 * (c + c.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(c);
  const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
  if (radius > 1e-12) {
    c *= 9.9 / radius;
  } else {
    c = 9.9 * Matrix::Identity(n, n);
  }

  Matrix q = k;
  q.leftCols(n) = k.leftCols(n);
  q.rightCols(n) = k.leftCols(n) * c + k.rightCols(n);

  Vector d(n);
  for (Index j = 0; j < n; ++j) d(j) = static_cast<double>(j + 1);
  Matrix dd(2 * n, 2 * n);
  dd.setZero();
  dd.diagonal().head(n) = d;
  dd.diagonal().tail(n) = d;

  Matrix m = q * dd * q.transpose();
  m = 0.5 * (m + m.transpose()).eval();
  return {SpdMatrix(std::move(m)), std::move(d)};
}

GyroscopicSystem::GyroscopicSystem(Matrix mass, Matrix gyro, Matrix stiffness,
                                   double structure_tol)
    : mass_(std::move(mass)),
      gyro_(std::move(gyro)),
      stiffness_(std::move(stiffness)) {
  const Index n = mass_.rows();
  if (n == 0 || mass_.cols() != n || gyro_.rows() != n || gyro_.cols() != n ||
      stiffness_.rows() != n || stiffness_.cols() != n) {
    throw std::invalid_argument(
        "GyroscopicSystem: blocks must be square of equal size");
  }
  // Mass and stiffness spd; gyroscopic block skew-symmetric.
  mass_ = SpdMatrix(mass_, structure_tol).matrix();
  stiffness_ = SpdMatrix(stiffness_, structure_tol).matrix();
  const double scale = std::max(gyro_.cwiseAbs().maxCoeff(), 1e-300);
  if ((gyro_ + gyro_.transpose()).cwiseAbs().maxCoeff() >
      structure_tol * scale) {
    throw StructureViolation(
        "GyroscopicSystem: gyroscopic block is not skew-symmetric");
  }
  gyro_ = 0.5 * (gyro_ - gyro_.transpose()).eval();
}

HamiltonianMatrix gyroscopic_hamiltonian(const GyroscopicSystem& sys) {
  const Index n = sys.dof();
  Eigen::LLT<Matrix> llt(sys.mass());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite(
        "gyroscopic_hamiltonian: mass matrix is not positive definite");
  }
  Matrix minv = llt.solve(Matrix::Identity(n, n));
  minv = 0.5 * (minv + minv.transpose()).eval();

  const Matrix h11 = -0.5 * (sys.gyro() * minv);
  Matrix h12 = 0.25 * (sys.gyro() * minv * sys.gyro()) - sys.stiffness();
  h12 = 0.5 * (h12 + h12.transpose()).eval();

  Matrix h(2 * n, 2 * n);
  h.topLeftCorner(n, n) = h11;
  h.topRightCorner(n, n) = h12;
  h.bottomLeftCorner(n, n) = minv;
  h.bottomRightCorner(n, n) = -h11.transpose();
  return HamiltonianMatrix(std::move(h));
}

GyroscopicSystem wire_saw_system(Index n, double speed, double g_scale) {
  if (n < 1) {
    throw std::invalid_argument("wire_saw_system: n must be positive");
  }
  if (!(speed >= 0.0 && speed < 1.0)) {
    throw std::invalid_argument(
        "wire_saw_system: transport speed must satisfy 0 <= v < 1");
  }
  if (!std::isfinite(g_scale)) {
    throw std::invalid_argument("wire_saw_system: g_scale must be finite");
  }

  const double pi = std::numbers::pi;
  Matrix stiffness = Matrix::Zero(n, n);
  for (Index j = 1; j <= n; ++j) {
    stiffness(j - 1, j - 1) =
        (1.0 - speed * speed) * (static_cast<double>(j) * pi) *
        (static_cast<double>(j) * pi);
  }
  Matrix gyro = Matrix::Zero(n, n);
  for (Index kk = 1; kk <= n; ++kk) {
    for (Index j = 1; j <= n; ++j) {
      if (((kk + j) % 2) == 1) {
        gyro(kk - 1, j - 1) = g_scale * 8.0 * speed *
                              static_cast<double>(kk) *
                              static_cast<double>(j) /
                              static_cast<double>(kk * kk - j * j);
      }
    }
  }
  return GyroscopicSystem(Matrix::Identity(n, n), std::move(gyro),
                          std::move(stiffness));
}

Matrix random_orthosymplectic(Index n, std::mt19937_64& rng) {
  if (n < 1) {
    throw std::invalid_argument("random_orthosymplectic: n must be positive");
  }
  return embed_unitary(haar_unitary(n, rng));
}

SpdMatrix random_spd(Index dim, std::mt19937_64& rng) {
  if (dim < 1) {
    throw std::invalid_argument("random_spd: dimension must be positive");
  }
  Eigen::HouseholderQR<Matrix> qr(gaussian(dim, dim, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  std::uniform_real_distribution<double> dist(0.5, 10.0);
  Vector lambda(dim);
  for (Index j = 0; j < dim; ++j) lambda(j) = dist(rng);
  Matrix m = q * lambda.asDiagonal() * q.transpose();
  m = 0.5 * (m + m.transpose()).eval();
  return SpdMatrix(std::move(m));
}

SymplecticFrame random_symplectic_frame(Index n, Index k,
                                        std::mt19937_64& rng) {
  SymplecticFrame x = SymplecticFrame::canonical(n, k);
  for (int step = 0; step < 2; ++step) {
    Matrix s = gaussian(2 * n, 2 * n, rng);
    s = 0.5 * (s + s.transpose()).eval();
    s /= s.norm();
    x = cayley_step(x, s, 0.8);
  }
  // Right shear [I C; 0 I] in Sp(2k) makes the frame non-orthonormal.
  Matrix c = gaussian(k, k, rng);
  c = 0.5 * (c + c.transpose()).eval();
  c *= 0.5 / std::max(c.norm(), 1e-300);
  Matrix sheared = x.matrix();
  sheared.rightCols(k) += x.matrix().leftCols(k) * c;
  return SymplecticFrame(std::move(sheared));
}

SkewHamiltonianSpd random_skew_hamiltonian_spd(Index n, std::mt19937_64& rng) {
  if (n < 1) {
    throw std::invalid_argument(
        "random_skew_hamiltonian_spd: n must be positive");
  }
  const ComplexMatrix w = complex_gaussian(n, rng);
  ComplexMatrix c =
      w * w.adjoint() / static_cast<double>(n) + ComplexMatrix::Identity(n, n);
  Matrix a = 0.5 * (c.real() + c.real().transpose());
  Matrix b = 0.5 * (c.imag() - c.imag().transpose());
  return SkewHamiltonianSpd(std::move(a), std::move(b));
}

}  // namespace speig
