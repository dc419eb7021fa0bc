#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace speig {

// All dense storage is column-major double precision throughout the library.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/* ---------------------------------------------------------------------- */
/* Error taxonomy                                                          */
/* ---------------------------------------------------------------------- */

/// A matrix required to be symmetric positive definite fails the check.
class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A skew-symmetric matrix is singular (has a zero eigenvalue) where an
/// invertible one is required.
class SingularSkewMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix is singular to working precision where an inverse is required.
class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a declared structural property (symmetry, skew-symmetry,
/// Hamiltonian block structure, file-format structure, ...).  The message
/// names the violated invariant.
class StructureViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Gram matrix of a frame is too ill-conditioned to invert reliably.
class IllConditionedFrame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Cayley resolvent is (numerically) singular at the requested step.
/// Callers should shrink the step and retry.
class RetractionBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix/vector file could not be parsed.  The message carries the
/// offending line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/* ---------------------------------------------------------------------- */
/* Default tolerances                                                      */
/* ---------------------------------------------------------------------- */

namespace tol {
// Structure checks (relative to the max-norm of the matrix).
inline constexpr double symmetry = 1e-10;
// Orthogonality of computed bases, Frobenius norm of Q^T Q - I.
inline constexpr double orthogonality = 1e-10;
// Real Schur reconstruction residual, relative to ||A||.
inline constexpr double schur = 1e-9;
// Matrix square root residual ||R R - M|| / ||M||.
inline constexpr double sqrt_residual = 1e-10;
// Singularity gate: smallest |eigenvalue| <= singular * ||A||_2.
inline constexpr double singular = 1e-12;
// Relative eigenvalue gap below which skew-Schur eigenvalues are clustered.
inline constexpr double cluster_gap = 1e-8;
// Symplecticity residual of freshly produced factors.
inline constexpr double feasibility = 1e-10;
// Symplecticity residual allowed to accumulate along an optimization run.
inline constexpr double frame_accept = 1e-8;
// Williamson reconstruction residual, relative to ||M||_F.
inline constexpr double williamson = 1e-9;
// Tangency residual relative to ||Z||_F.
inline constexpr double tangent = 1e-8;
// Eigenvector residual reported by the end-to-end solvers.
inline constexpr double residual = 1e-8;
}  // namespace tol

/* ---------------------------------------------------------------------- */
/* Validated matrix types                                                  */
/* ---------------------------------------------------------------------- */

/// Symmetric positive-definite matrix.  Construction validates finiteness,
/// symmetry (relative max-norm) and positive definiteness (Cholesky).
class SpdMatrix {
 public:
  explicit SpdMatrix(Matrix m, double symmetry_tol = tol::symmetry);

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// Skew-symmetric matrix of even dimension.
class SkewSymmetricMatrix {
 public:
  explicit SkewSymmetricMatrix(Matrix m, double skew_tol = tol::symmetry);

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

/// A 2n x 2k matrix X with X^T J_{2n} X = J_{2k} (columns form a symplectic
/// frame).  Construction validates shape, finiteness and the symplecticity
/// residual ||X^T J X - J_{2k}||_F against `feas_tol`; the residual measured
/// at construction is cached.
class SymplecticFrame {
 public:
  explicit SymplecticFrame(Matrix x, double feas_tol = tol::frame_accept);

  /// Columns e_1..e_k, e_{n+1}..e_{n+k} of I_{2n}; exactly symplectic.
  static SymplecticFrame canonical(Index n, Index k);

  const Matrix& matrix() const { return x_; }
  Index n() const { return x_.rows() / 2; }
  Index k() const { return x_.cols() / 2; }
  Index rows() const { return x_.rows(); }
  Index cols() const { return x_.cols(); }
  /// Symplecticity residual measured when this frame was constructed.
  double residual() const { return residual_; }

 private:
  SymplecticFrame(Matrix x, double residual, int /*trusted*/);

  Matrix x_;
  double residual_;
};

}  // namespace speig
