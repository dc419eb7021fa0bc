#include "speig/eigensolver.hpp"

#include "speig/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <utility>

namespace speig {

namespace {

// Relative skew-Hamiltonian defect of X^T M X accepted as "converged to an
// invariant subspace"; larger defects are reported but flagged.
constexpr double kCompressedStructureTol = 1e-6;

}  // namespace

HamiltonianMatrix::HamiltonianMatrix(Matrix h, double structure_tol)
    : h_(std::move(h)) {
  if (h_.rows() == 0 || h_.rows() != h_.cols() || h_.rows() % 2 != 0) {
    throw std::invalid_argument(
        "HamiltonianMatrix: expected a square matrix of even dimension");
  }
  if (!h_.allFinite()) {
    throw std::invalid_argument("HamiltonianMatrix: entries must be finite");
  }
  const Matrix g = jtprod(h_);
  const double scale = std::max(g.cwiseAbs().maxCoeff(), 1e-300);
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (asym > structure_tol * scale) {
    std::ostringstream msg;
    msg << "HamiltonianMatrix: J^T H is not symmetric (relative defect "
        << asym / scale << ")";
    throw StructureViolation(msg.str());
  }
}

SymplecticSpectrumResult symplectic_eigs_smallest(
    const SpdMatrix& m, Index k, const OptimizerConfig& cfg,
    const std::optional<SymplecticFrame>& x0) {
  if (m.dim() % 2 != 0) {
    throw std::invalid_argument(
        "symplectic_eigs_smallest: matrix dimension must be even");
  }
  const Index n = m.dim() / 2;
  if (k < 1 || k > n) {
    throw std::invalid_argument("symplectic_eigs_smallest: need 1 <= k <= n");
  }

  MinimizeResult opt = x0 ? minimize(m, k, *x0, cfg) : minimize(m, k, cfg);

  // Rotate the compressed matrix to Williamson form; the rotation carries the
  // frame onto the eigenvector set.
  const Matrix compressed =
      opt.x.matrix().transpose() * (m.matrix() * opt.x.matrix());
  const double structure_residual =
      SkewHamiltonianSpd::structure_residual(compressed);
  const bool structure_ok = structure_residual <= kCompressedStructureTol;

  OrthosymplecticWilliamson ow =
      williamson_skew_hamiltonian(SkewHamiltonianSpd::project(compressed));

  const double accept = std::max(tol::frame_accept, 10.0 * opt.x.residual());
  SymplecticFrame xe(Matrix(opt.x.matrix() * ow.k.matrix()), accept);
  const double residual = eigvector_residual(m.matrix(), xe.matrix(), ow.d);

  SymplecticSpectrumResult out{
      ow.d,     std::move(xe),       residual,
      ow.d,     structure_residual,  structure_ok,
      opt.converged && structure_ok, std::move(opt)};
  return out;
}

SymplecticSpectrumResult symplectic_eigs_largest(const SpdMatrix& m, Index k,
                                                 const OptimizerConfig& cfg) {
  Eigen::LLT<Matrix> llt(m.matrix());
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-15) {
    throw SingularMatrix(
        "symplectic_eigs_largest: matrix is singular to working precision");
  }
  Matrix minv = llt.solve(Matrix::Identity(m.dim(), m.dim()));
  minv = 0.5 * (minv + minv.transpose()).eval();

  SymplecticSpectrumResult inner =
      symplectic_eigs_smallest(SpdMatrix(std::move(minv)), k, cfg);

  // The smallest symplectic eigenvalues of M^{-1} are the reciprocals of the
  // largest ones of M, and J X J_{2k}^T turns the eigenvector set of M^{-1}
  // into one of M (same column pairing, reciprocal multipliers).
  Vector d = inner.d.cwiseInverse();
  const double accept =
      std::max(tol::frame_accept, 10.0 * inner.x.residual());
  SymplecticFrame x(prodjt(jprod(inner.x.matrix())), accept);
  const double residual = eigvector_residual(m.matrix(), x.matrix(), d);

  SymplecticSpectrumResult out{
      d,        std::move(x),              residual,
      d,        inner.structure_residual,  inner.structure_ok,
      inner.converged,                     std::move(inner.optimization)};
  return out;
}

HamiltonianEigsResult hamiltonian_eigs(const HamiltonianMatrix& h, Index k,
                                       const OptimizerConfig& cfg) {
  // Exactly one of J^T H, J H can be positive definite; probe both.
  std::optional<SpdMatrix> m;
  bool definite_jt_h = true;
  try {
    m.emplace(jtprod(h.matrix()));
  } catch (const std::exception&) {
    try {
      m.emplace(jprod(h.matrix()));
      definite_jt_h = false;
    } catch (const std::exception&) {
      throw StructureViolation(
          "hamiltonian_eigs: neither J^T H nor J H is positive definite");
    }
  }

  SymplecticSpectrumResult base = symplectic_eigs_smallest(*m, k, cfg);

  const Index n = h.dim() / 2;
  const std::complex<double> i(0.0, 1.0);
  ComplexMatrix v(2 * n, 2 * k);
  ComplexVector lambda(2 * k);
  for (Index j = 0; j < k; ++j) {
    const Vector u = base.x.matrix().col(j);
    const Vector w = base.x.matrix().col(k + j);
    const double nrm = std::sqrt(u.squaredNorm() + w.squaredNorm());
    // With M = J^T H definite, H(u + iw) = +i d (u + iw); with M = J H
    // definite the conjugate pairing is flipped.
    ComplexVector plus = (u.cast<std::complex<double>>() +
                          i * w.cast<std::complex<double>>()) /
                         nrm;
    ComplexVector minus = (u.cast<std::complex<double>>() -
                           i * w.cast<std::complex<double>>()) /
                          nrm;
    if (!definite_jt_h) std::swap(plus, minus);
    v.col(2 * j) = plus;
    lambda(2 * j) = i * base.d(j);
    v.col(2 * j + 1) = minus;
    lambda(2 * j + 1) = -i * base.d(j);
  }

  const ComplexMatrix hv = h.matrix().cast<std::complex<double>>() * v;
  const double residual =
      (hv - v * lambda.asDiagonal()).norm() / hv.norm();

  return {std::move(lambda), std::move(v), residual, definite_jt_h,
          std::move(base)};
}

double kkt_residual(const SpdMatrix& m, const SymplecticFrame& x,
                    const Vector& lambda) {
  if (m.dim() != x.rows() || lambda.size() != x.k()) {
    throw std::invalid_argument("kkt_residual: inconsistent shapes");
  }
  const Index n = x.n();
  const Index k = x.k();
  Matrix l = Matrix::Zero(2 * k, 2 * k);
  l.topRightCorner(k, k) = Matrix((-lambda).asDiagonal());
  l.bottomLeftCorner(k, k) = Matrix(lambda.asDiagonal());
  const Matrix mx = m.matrix() * x.matrix();
  const Matrix rhs = poisson_matrix(n) * x.matrix() * l;
  return (mx - rhs).norm() / mx.norm();
}

}  // namespace speig
