#include "speig/types.hpp"

#include "speig/linalg.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

namespace speig {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": entries must be finite");
  }
}

}  // namespace

SpdMatrix::SpdMatrix(Matrix m, double symmetry_tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw std::invalid_argument("SpdMatrix: expected a nonempty square matrix");
  }
  require_finite(m_, "SpdMatrix");
  const double scale = m_.cwiseAbs().maxCoeff();
  const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > symmetry_tol * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg << "SpdMatrix: matrix is not symmetric (relative asymmetry "
        << asym / std::max(scale, 1e-300) << ")";
    throw StructureViolation(msg.str());
  }
  // Work on the symmetrized copy so downstream spectral routines see an
  // exactly symmetric matrix.
  m_ = 0.5 * (m_ + m_.transpose()).eval();
  Eigen::LLT<Matrix> llt(m_);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("SpdMatrix: matrix is not positive definite");
  }
}

SkewSymmetricMatrix::SkewSymmetricMatrix(Matrix m, double skew_tol)
    : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw std::invalid_argument(
        "SkewSymmetricMatrix: expected a nonempty square matrix");
  }
  if (m_.rows() % 2 != 0) {
    throw std::invalid_argument(
        "SkewSymmetricMatrix: dimension must be even");
  }
  require_finite(m_, "SkewSymmetricMatrix");
  const double scale = std::max(m_.cwiseAbs().maxCoeff(), 1e-300);
  const double skew_defect = (m_ + m_.transpose()).cwiseAbs().maxCoeff();
  if (skew_defect > skew_tol * scale) {
    std::ostringstream msg;
    msg << "SkewSymmetricMatrix: matrix is not skew-symmetric "
           "(relative defect "
        << skew_defect / scale << ")";
    throw StructureViolation(msg.str());
  }
  m_ = 0.5 * (m_ - m_.transpose()).eval();
}

SymplecticFrame::SymplecticFrame(Matrix x, double feas_tol) : x_(std::move(x)) {
  if (x_.rows() == 0 || x_.rows() % 2 != 0 || x_.cols() == 0 ||
      x_.cols() % 2 != 0) {
    throw std::invalid_argument(
        "SymplecticFrame: expected a 2n x 2k matrix with n, k >= 1");
  }
  if (x_.cols() > x_.rows()) {
    throw std::invalid_argument("SymplecticFrame: k must not exceed n");
  }
  require_finite(x_, "SymplecticFrame");
  residual_ = symplecticity_residual(x_);
  if (!(residual_ <= feas_tol)) {
    std::ostringstream msg;
    msg << "SymplecticFrame: symplecticity residual " << residual_
        << " exceeds tolerance " << feas_tol;
    throw std::invalid_argument(msg.str());
  }
}

SymplecticFrame::SymplecticFrame(Matrix x, double residual, int)
    : x_(std::move(x)), residual_(residual) {}

SymplecticFrame SymplecticFrame::canonical(Index n, Index k) {
  if (n < 1 || k < 1 || k > n) {
    throw std::invalid_argument("SymplecticFrame::canonical: need 1 <= k <= n");
  }
  Matrix x = Matrix::Zero(2 * n, 2 * k);
  x.block(0, 0, k, k).setIdentity();
  x.block(n, k, k, k).setIdentity();
  return SymplecticFrame(std::move(x), 0.0, 0);
}

}  // namespace speig
