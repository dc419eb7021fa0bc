#pragma once

#include "speig/optimizer.hpp"
#include "speig/williamson.hpp"

#include <optional>

namespace speig {

/// Real Hamiltonian matrix: H with J^T H symmetric.
class HamiltonianMatrix {
 public:
  explicit HamiltonianMatrix(Matrix h, double structure_tol = tol::symmetry);

  const Matrix& matrix() const { return h_; }
  Index dim() const { return h_.rows(); }

 private:
  Matrix h_;
};

struct SymplecticSpectrumResult {
  Vector d;           // k symplectic eigenvalues: ascending (smallest mode) or
                      // descending (largest mode)
  SymplecticFrame x;  // 2n x 2k normalized symplectic eigenvector set
  double residual;    // ||M X - J X [0 -D; D 0]||_F / ||M X||_F
  Vector lambda;      // Lagrange multiplier spectrum (equals d, same order)
  double structure_residual;  // skew-Hamiltonian defect of X_*^T M X_*
  bool structure_ok;
  bool converged;  // optimizer converged and the compressed structure held
  MinimizeResult optimization;
};

/// k smallest symplectic eigenvalues of an spd matrix with a normalized
/// symplectic eigenvector set, via trace minimization followed by a
/// structured Williamson solve of the compressed 2k x 2k matrix.
SymplecticSpectrumResult symplectic_eigs_smallest(
    const SpdMatrix& m, Index k, const OptimizerConfig& cfg = {},
    const std::optional<SymplecticFrame>& x0 = {});

/// k largest symplectic eigenvalues via the smallest ones of M^{-1}; the
/// eigenvector set is recovered as J X J_{2k}^T.
SymplecticSpectrumResult symplectic_eigs_largest(const SpdMatrix& m, Index k,
                                                 const OptimizerConfig& cfg = {});

struct HamiltonianEigsResult {
  ComplexVector lambda;  // 2k purely imaginary values, paired (+i d_j, -i d_j)
  ComplexMatrix v;       // unit-norm eigenvector per column
  double residual;       // ||H V - V diag(lambda)||_F / ||H V||_F
  bool definite_jt_h;    // J^T H spd (otherwise J H spd was used)
  SymplecticSpectrumResult base;
};

/// Eigenvalues of smallest modulus of a Hamiltonian matrix with J^T H or
/// J H positive definite, assembled from the symplectic eigenvalue problem
/// of the definite product.
HamiltonianEigsResult hamiltonian_eigs(const HamiltonianMatrix& h, Index k,
                                       const OptimizerConfig& cfg = {});

/// First-order optimality residual
/// ||M X - J X [0 -L; L 0]||_F / ||M X||_F, assembled densely.
double kkt_residual(const SpdMatrix& m, const SymplecticFrame& x,
                    const Vector& lambda);

}  // namespace speig
