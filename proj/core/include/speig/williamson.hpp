#pragma once

#include "speig/types.hpp"

#include <utility>

namespace speig {

/// Williamson normal form of an spd matrix: S^T M S = diag(D, D) with S
/// symplectic and d the symplectic eigenvalues, ascending.  `residual` is
/// ||S^T M S - diag(D, D)||_F / ||M||_F measured on the returned factors.
struct WilliamsonForm {
  SymplecticFrame s;
  Vector d;
  double residual;
};

/// Diagonalize a general spd matrix of dimension 2n via the real Schur form
/// of M^{1/2} J M^{1/2}.
WilliamsonForm williamson_general(const SpdMatrix& m);

/// Skew-Hamiltonian spd matrix N = [A B; -B A] with A symmetric and B
/// skew-symmetric (the structure of X^T M X at a critical frame X).
class SkewHamiltonianSpd {
 public:
  /// From the two structure blocks; validates block structure and positive
  /// definiteness of the assembled matrix.
  SkewHamiltonianSpd(Matrix a, Matrix b, double structure_tol = tol::symmetry);

  /// From a full 2k x 2k matrix; throws StructureViolation when the relative
  /// structure residual exceeds `structure_tol`.
  static SkewHamiltonianSpd from_matrix(const Matrix& n,
                                        double structure_tol = tol::symmetry);

  /// Nearest structured blocks of an arbitrary square matrix (symmetrized /
  /// skew-symmetrized quadrant averages); no positive definiteness check is
  /// applied to the input beyond assembling the projection.
  static SkewHamiltonianSpd project(const Matrix& n);

  /// || N - [A B; -B A] ||_F / max(||N||_F, eps) for a general matrix.
  static double structure_residual(const Matrix& n);

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  Index dim() const { return 2 * a_.rows(); }
  Matrix assemble() const;

 private:
  Matrix a_;  // symmetric
  Matrix b_;  // skew-symmetric
};

/// Williamson form of a skew-Hamiltonian spd matrix through the Hermitian
/// matrix A + iB: returns an orthosymplectic K and ascending d with
/// K^T N K = diag(D, D).
struct OrthosymplecticWilliamson {
  SymplecticFrame k;
  Vector d;
};
OrthosymplecticWilliamson williamson_skew_hamiltonian(
    const SkewHamiltonianSpd& n);

/// Normalized symplectic eigenvector residual
/// ||M X - J X [0 -D; D 0]||_F / ||M X||_F.
double eigvector_residual(const Matrix& m, const Matrix& x, const Vector& d);
double eigvector_residual(const SpdMatrix& m, const SymplecticFrame& x,
                          const Vector& d);

}  // namespace speig
