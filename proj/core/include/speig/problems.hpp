#pragma once

#include "speig/eigensolver.hpp"
#include "speig/types.hpp"
#include "speig/williamson.hpp"

#include <cstdint>
#include <random>

namespace speig {

struct KnownSpectrumProblem {
  SpdMatrix m;
  Vector d;  // exact symplectic eigenvalues, ascending
};

/// M = Q diag(D, D) Q^T with D = diag(1, ..., n) and Q = K L symplectic:
/// K the orthosymplectic embedding of a Haar-random unitary and
/// L = [I C; 0 I] with symmetric C scaled so cond(L) = 100.  Deterministic
/// in the seed (std::mt19937_64).
KnownSpectrumProblem known_spectrum_matrix(Index n, std::uint64_t seed);

/// Second-order gyroscopic system M_m q'' + G q' + K_m q = 0 with spd mass
/// and stiffness and skew-symmetric gyroscopic coupling.
class GyroscopicSystem {
 public:
  GyroscopicSystem(Matrix mass, Matrix gyro, Matrix stiffness,
                   double structure_tol = tol::symmetry);

  const Matrix& mass() const { return mass_; }
  const Matrix& gyro() const { return gyro_; }
  const Matrix& stiffness() const { return stiffness_; }
  Index dof() const { return mass_.rows(); }

 private:
  Matrix mass_;
  Matrix gyro_;
  Matrix stiffness_;
};

/// Hamiltonian linearization of the gyroscopic quadratic eigenproblem:
///   H = [ -G M^{-1}/2,   G M^{-1} G/4 - K ;
///         M^{-1},        -M^{-1} G/2      ].
/// J^T H is symmetric exactly by construction.
HamiltonianMatrix gyroscopic_hamiltonian(const GyroscopicSystem& sys);

/// Galerkin discretization of a moving wire (orthonormal sine basis):
/// mass I_n, stiffness diag((1 - v^2) (j pi)^2) and gyroscopic coupling
/// G(k, j) = 8 v k j / (k^2 - j^2) * g_scale for odd k + j (1-based), else 0.
/// Requires 0 <= v < 1 (subcritical transport speed).
GyroscopicSystem wire_saw_system(Index n, double speed, double g_scale = 1.0);

/// Orthosymplectic embedding of a Haar-random n x n unitary.
Matrix random_orthosymplectic(Index n, std::mt19937_64& rng);

/// Random spd matrix with eigenvalues uniform in [0.5, 10].
SpdMatrix random_spd(Index dim, std::mt19937_64& rng);

/// Generic (non-orthonormal) random symplectic frame: the canonical frame
/// pushed through two random Cayley steps and a shear.
SymplecticFrame random_symplectic_frame(Index n, Index k, std::mt19937_64& rng);

/// Random skew-Hamiltonian spd matrix [A B; -B A] of dimension 2n.
SkewHamiltonianSpd random_skew_hamiltonian_spd(Index n, std::mt19937_64& rng);

}  // namespace speig
