#include "speig/williamson.hpp"

#include "speig/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>

namespace speig {

WilliamsonForm williamson_general(const SpdMatrix& m) {
  const Index dim = m.dim();
  if (dim % 2 != 0) {
    throw std::invalid_argument(
        "williamson_general: matrix dimension must be even");
  }
  const Index n = dim / 2;

  const Matrix r = sym_sqrt(m);
  // M^{1/2} J M^{1/2} is skew-symmetric and invertible.
  Matrix mt = r * jprod(r);
  mt = 0.5 * (mt - mt.transpose()).eval();
  SchurFactorization schur = skew_schur(SkewSymmetricMatrix(std::move(mt)));

  // Columns of Q P: the perfect shuffle pulls the u_j vectors to the front
  // and the v_j vectors to the back.
  Matrix qp(dim, dim);
  for (Index j = 0; j < n; ++j) {
    qp.col(j) = schur.q.col(2 * j);
    qp.col(n + j) = schur.q.col(2 * j + 1);
  }

  // S = J M^{1/2} (Q P) [0 -D^{-1/2}; D^{-1/2} 0].
  const Vector dis = schur.d.cwiseSqrt().cwiseInverse();
  Matrix w(dim, dim);
  for (Index j = 0; j < n; ++j) {
    w.col(j) = dis(j) * qp.col(n + j);
    w.col(n + j) = -dis(j) * qp.col(j);
  }
  Matrix s = jprod(r * w);

  Matrix delta = s.transpose() * (m.matrix() * s);
  for (Index j = 0; j < n; ++j) {
    delta(j, j) -= schur.d(j);
    delta(n + j, n + j) -= schur.d(j);
  }
  const double residual = delta.norm() / m.matrix().norm();

  return {SymplecticFrame(std::move(s), tol::feasibility), schur.d, residual};
}

SkewHamiltonianSpd::SkewHamiltonianSpd(Matrix a, Matrix b, double structure_tol)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols() || b_.rows() != a_.rows() ||
      b_.cols() != a_.cols()) {
    throw std::invalid_argument(
        "SkewHamiltonianSpd: A and B must be square of equal size");
  }
  const double scale =
      std::max({a_.cwiseAbs().maxCoeff(), b_.cwiseAbs().maxCoeff(), 1e-300});
  if ((a_ - a_.transpose()).cwiseAbs().maxCoeff() > structure_tol * scale) {
    throw StructureViolation("SkewHamiltonianSpd: block A is not symmetric");
  }
  if ((b_ + b_.transpose()).cwiseAbs().maxCoeff() > structure_tol * scale) {
    throw StructureViolation(
        "SkewHamiltonianSpd: block B is not skew-symmetric");
  }
  a_ = 0.5 * (a_ + a_.transpose()).eval();
  b_ = 0.5 * (b_ - b_.transpose()).eval();
  // Positive definiteness of [A B; -B A] equals that of the Hermitian A + iB.
  ComplexMatrix c = a_.cast<std::complex<double>>();
  c.imag() = b_;
  Eigen::LLT<ComplexMatrix> llt(c);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite(
        "SkewHamiltonianSpd: assembled matrix is not positive definite");
  }
}

SkewHamiltonianSpd SkewHamiltonianSpd::from_matrix(const Matrix& n,
                                                   double structure_tol) {
  const double res = structure_residual(n);
  if (res > structure_tol) {
    std::ostringstream msg;
    msg << "SkewHamiltonianSpd: relative structure residual " << res
        << " exceeds tolerance " << structure_tol;
    throw StructureViolation(msg.str());
  }
  SkewHamiltonianSpd out = project(n);
  return out;
}

SkewHamiltonianSpd SkewHamiltonianSpd::project(const Matrix& n) {
  if (n.rows() == 0 || n.rows() != n.cols() || n.rows() % 2 != 0) {
    throw std::invalid_argument(
        "SkewHamiltonianSpd: expected a square matrix of even dimension");
  }
  const Index k = n.rows() / 2;
  Matrix a = 0.5 * (n.topLeftCorner(k, k) + n.bottomRightCorner(k, k));
  a = 0.5 * (a + a.transpose()).eval();
  Matrix b = 0.5 * (n.topRightCorner(k, k) - n.bottomLeftCorner(k, k));
  b = 0.5 * (b - b.transpose()).eval();
  return SkewHamiltonianSpd(std::move(a), std::move(b));
}

double SkewHamiltonianSpd::structure_residual(const Matrix& n) {
  if (n.rows() == 0 || n.rows() != n.cols() || n.rows() % 2 != 0) {
    throw std::invalid_argument(
        "SkewHamiltonianSpd: expected a square matrix of even dimension");
  }
  const Index k = n.rows() / 2;
  Matrix a = 0.5 * (n.topLeftCorner(k, k) + n.bottomRightCorner(k, k));
  a = 0.5 * (a + a.transpose()).eval();
  Matrix b = 0.5 * (n.topRightCorner(k, k) - n.bottomLeftCorner(k, k));
  b = 0.5 * (b - b.transpose()).eval();
  Matrix structured(n.rows(), n.cols());
  structured << a, b, -b, a;
  return (n - structured).norm() / std::max(n.norm(), 1e-300);
}

Matrix SkewHamiltonianSpd::assemble() const {
  Matrix out(dim(), dim());
  out << a_, b_, -b_, a_;
  return out;
}

OrthosymplecticWilliamson williamson_skew_hamiltonian(
    const SkewHamiltonianSpd& n) {
  const Index k = n.a().rows();
  ComplexMatrix c = n.a().cast<std::complex<double>>();
  c.imag() = n.b();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error(
        "williamson_skew_hamiltonian: Hermitian eigendecomposition failed");
  }
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw NotPositiveDefinite(
        "williamson_skew_hamiltonian: matrix is numerically not positive "
        "definite");
  }

  // Fix each eigenvector's phase so the largest-modulus component is real
  // and positive; keeps the embedding deterministic.
  ComplexMatrix u = es.eigenvectors();
  for (Index j = 0; j < k; ++j) {
    Index imax = 0;
    u.col(j).cwiseAbs().maxCoeff(&imax);
    const std::complex<double> z = u(imax, j);
    u.col(j) *= std::conj(z) / std::abs(z);
  }

  Matrix km(2 * k, 2 * k);
  km.topLeftCorner(k, k) = u.real();
  km.topRightCorner(k, k) = u.imag();
  km.bottomLeftCorner(k, k) = -u.imag();
  km.bottomRightCorner(k, k) = u.real();

  return {SymplecticFrame(std::move(km), tol::feasibility), es.eigenvalues()};
}

double eigvector_residual(const Matrix& m, const Matrix& x, const Vector& d) {
  if (x.rows() != m.rows() || m.rows() != m.cols() || x.cols() % 2 != 0 ||
      x.cols() / 2 != d.size()) {
    throw std::invalid_argument("eigvector_residual: inconsistent shapes");
  }
  const Index k = d.size();
  const Matrix mx = m * x;
  // X [0 -D; D 0], then J applied on the left.
  Matrix xl(x.rows(), x.cols());
  for (Index j = 0; j < k; ++j) {
    xl.col(j) = d(j) * x.col(k + j);
    xl.col(k + j) = -d(j) * x.col(j);
  }
  return (mx - jprod(xl)).norm() / mx.norm();
}

double eigvector_residual(const SpdMatrix& m, const SymplecticFrame& x,
                          const Vector& d) {
  return eigvector_residual(m.matrix(), x.matrix(), d);
}

}  // namespace speig
