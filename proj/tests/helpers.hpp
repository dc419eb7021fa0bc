#pragma once

#include <speig/linalg.hpp>
#include <speig/types.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>
#include <vector>

namespace speig::testing {

// Reference symplectic spectrum: ascending positive imaginary parts of the
// eigenvalues of J M, computed by a general complex eigensolver.
inline Vector oracle_symplectic_eigs(const Matrix& m) {
  Eigen::EigenSolver<Matrix> es(jprod(m));
  std::vector<double> pos;
  for (Index j = 0; j < m.rows(); ++j) {
    const double im = es.eigenvalues()(j).imag();
    if (im > 0.0) pos.push_back(im);
  }
  std::sort(pos.begin(), pos.end());
  return Eigen::Map<const Vector>(pos.data(), static_cast<Index>(pos.size()));
}

// Positive imaginary parts of eig(H) for a Hamiltonian matrix, ascending.
inline Vector oracle_imag_parts(const Matrix& h) {
  Eigen::EigenSolver<Matrix> es(h);
  std::vector<double> pos;
  for (Index j = 0; j < h.rows(); ++j) {
    const double im = es.eigenvalues()(j).imag();
    if (im > 0.0) pos.push_back(im);
  }
  std::sort(pos.begin(), pos.end());
  return Eigen::Map<const Vector>(pos.data(), static_cast<Index>(pos.size()));
}

inline Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = dist(rng);
  }
  return m;
}

inline Matrix random_symmetric(Index dim, std::mt19937_64& rng) {
  Matrix g = gaussian(dim, dim, rng);
  return ((g + g.transpose()) / 2).eval();
}

inline Matrix random_orthogonal(Index dim, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(dim, dim, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

// Inverse of a square symplectic matrix: T^{-1} = J^T T^T J.
inline Matrix symplectic_inverse(const Matrix& t) {
  return jtprod(jtprod(t.transpose()).transpose());
}

// M = T^{-T} diag(D, D) T^{-1} for a square symplectic T, so that T
// symplectically diagonalizes M and the symplectic spectrum is exactly d.
inline Matrix conjugated_diag(const Vector& d, const Matrix& t) {
  const Index n = d.size();
  Vector dd(2 * n);
  dd << d, d;
  const Matrix ti = symplectic_inverse(t);
  Matrix m = ti.transpose() * dd.asDiagonal() * ti;
  return ((m + m.transpose()) / 2).eval();
}

// Columns (indices[0..k-1], n + indices[0..k-1]) of a 2n-column matrix:
// the normalized symplectic eigenvector set for those eigenvalue indices.
inline Matrix eigvec_set(const Matrix& s, const std::vector<Index>& indices) {
  const Index n = s.cols() / 2;
  const Index k = static_cast<Index>(indices.size());
  Matrix x(s.rows(), 2 * k);
  for (Index j = 0; j < k; ++j) {
    x.col(j) = s.col(indices[j]);
    x.col(k + j) = s.col(n + indices[j]);
  }
  return x;
}

}  // namespace speig::testing
