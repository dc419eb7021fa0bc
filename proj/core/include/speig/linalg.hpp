#pragma once

#include "speig/types.hpp"

#include <vector>

namespace speig {

/* ---------------------------------------------------------------------- */
/* The Poisson matrix J_{2n} = [0 I; -I 0] and cheap products with it      */
/* ---------------------------------------------------------------------- */

/// Dense J_{2n} for a given half-dimension n.
Matrix poisson_matrix(Index n);

/// J * Y without forming J (Y has an even number of rows).
Matrix jprod(const Matrix& y);
/// J^T * Y = -J * Y.
Matrix jtprod(const Matrix& y);
/// Y * J (Y has an even number of columns).
Matrix prodj(const Matrix& y);
/// Y * J^T.
Matrix prodjt(const Matrix& y);

/* ---------------------------------------------------------------------- */
/* Structured factorizations                                               */
/* ---------------------------------------------------------------------- */

/// ||X^T J X - J_{2k}||_F for a 2n x 2k matrix.
double symplecticity_residual(const Matrix& x);

/// Symmetric eigendecomposition A = Q diag(lambda) Q^T, eigenvalues
/// ascending.  Rejects asymmetric input.
struct SymmetricEig {
  Matrix q;
  Vector lambda;
};
SymmetricEig symmetric_eig(const Matrix& a, double symmetry_tol = tol::symmetry);

/// Principal square root of an spd matrix via its spectral decomposition.
Matrix sym_sqrt(const SpdMatrix& m);

/// Real Schur form of an invertible skew-symmetric matrix:
/// Q^T A Q = blkdiag([0 d_j; -d_j 0]), Q orthogonal, d ascending > 0.
struct SchurFactorization {
  Matrix q;
  Vector d;
};
SchurFactorization skew_schur(const SkewSymmetricMatrix& a,
                              double cluster_gap = tol::cluster_gap,
                              double singular_tol = tol::singular);

/// blkdiag([0 d_j; -d_j 0]) for the given d (the form skew_schur reduces to).
Matrix skew_block_diagonal(const Vector& d);

/// Perfect shuffle P = [e_1, e_3, ..., e_{2n-1}, e_2, e_4, ..., e_{2n}].
Matrix perfect_shuffle(Index n);

/// Symplectic Givens rotation in the (plane, n+plane) coordinate pair,
/// 0-based plane index: acts as [cos t, sin t; -sin t, cos t] there and as
/// the identity elsewhere.  Orthogonal and symplectic.
Matrix givens_symplectic(Index n, Index plane, double theta);

/// Quadrant-wise block-diagonal assembly: splits each even-dimensional input
/// into 2x2 blocks of quadrants and direct-sums quadrant-wise, so that
/// dab(J_2, ..., J_2) = J_{2m} and symplectic/orthogonal/Hamiltonian
/// structure is preserved.
Matrix dab(const std::vector<Matrix>& blocks);

}  // namespace speig
