#include "speig/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace speig {

namespace {

void require_even_rows(const Matrix& y, const char* what) {
  if (y.rows() % 2 != 0) {
    throw std::invalid_argument(std::string(what) +
                                ": matrix must have an even number of rows");
  }
}

}  // namespace

Matrix poisson_matrix(Index n) {
  if (n < 1) {
    throw std::invalid_argument("poisson_matrix: n must be positive");
  }
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.block(0, n, n, n).setIdentity();
  j.block(n, 0, n, n) = -Matrix::Identity(n, n);
  return j;
}

Matrix jprod(const Matrix& y) {
  require_even_rows(y, "jprod");
  const Index m = y.rows() / 2;
  Matrix out(y.rows(), y.cols());
  out.topRows(m) = y.bottomRows(m);
  out.bottomRows(m) = -y.topRows(m);
  return out;
}

Matrix jtprod(const Matrix& y) {
  require_even_rows(y, "jtprod");
  const Index m = y.rows() / 2;
  Matrix out(y.rows(), y.cols());
  out.topRows(m) = -y.bottomRows(m);
  out.bottomRows(m) = y.topRows(m);
  return out;
}

Matrix prodj(const Matrix& y) {
  if (y.cols() % 2 != 0) {
    throw std::invalid_argument(
        "prodj: matrix must have an even number of columns");
  }
  const Index m = y.cols() / 2;
  Matrix out(y.rows(), y.cols());
  out.leftCols(m) = -y.rightCols(m);
  out.rightCols(m) = y.leftCols(m);
  return out;
}

Matrix prodjt(const Matrix& y) {
  if (y.cols() % 2 != 0) {
    throw std::invalid_argument(
        "prodjt: matrix must have an even number of columns");
  }
  const Index m = y.cols() / 2;
  Matrix out(y.rows(), y.cols());
  out.leftCols(m) = y.rightCols(m);
  out.rightCols(m) = -y.leftCols(m);
  return out;
}

double symplecticity_residual(const Matrix& x) {
  if (x.rows() % 2 != 0 || x.cols() % 2 != 0) {
    throw std::invalid_argument(
        "symplecticity_residual: expected a 2n x 2k matrix");
  }
  const Index k = x.cols() / 2;
  Matrix g = x.transpose() * jprod(x);
  g.block(0, k, k, k) -= Matrix::Identity(k, k);
  g.block(k, 0, k, k) += Matrix::Identity(k, k);
  return g.norm();
}

SymmetricEig symmetric_eig(const Matrix& a, double symmetry_tol) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw std::invalid_argument("symmetric_eig: expected a square matrix");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument("symmetric_eig: entries must be finite");
  }
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > symmetry_tol * scale) {
    std::ostringstream msg;
    msg << "symmetric_eig: matrix is not symmetric (relative asymmetry "
        << asym / scale << ")";
    throw StructureViolation(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symmetric_eig: eigendecomposition failed");
  }
  return {es.eigenvectors(), es.eigenvalues()};
}

Matrix sym_sqrt(const SpdMatrix& m) {
  SymmetricEig eig = symmetric_eig(m.matrix());
  if (eig.lambda.minCoeff() <= 0.0) {
    throw NotPositiveDefinite(
        "sym_sqrt: matrix is numerically not positive definite");
  }
  Matrix r = eig.q * eig.lambda.cwiseSqrt().asDiagonal() * eig.q.transpose();
  return 0.5 * (r + r.transpose());
}

SchurFactorization skew_schur(const SkewSymmetricMatrix& a, double cluster_gap,
                              double singular_tol) {
  const Matrix& am = a.matrix();
  const Index dim = am.rows();

  // -A^2 is symmetric positive semidefinite with eigenvalues d_j^2, each of
  // even multiplicity; its eigenvectors give the invariant planes of A.
  Matrix b = -(am * am);
  b = 0.5 * (b + b.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(b);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("skew_schur: eigendecomposition of -A^2 failed");
  }
  Vector lambda = es.eigenvalues().cwiseMax(0.0);
  Vector dest = lambda.cwiseSqrt();  // ascending estimates of |d|
  const double norm2 = dest(dim - 1);

  if (dest(0) <= singular_tol * norm2) {
    std::ostringstream msg;
    msg << "skew_schur: matrix is singular to working precision "
        << "(smallest |eigenvalue| " << dest(0) << ", scale " << norm2 << ")";
    throw SingularSkewMatrix(msg.str());
  }

  // Group eigenvalue estimates whose relative gap is below cluster_gap; each
  // group spans an A-invariant subspace and must contain whole planes, so
  // odd-sized groups are merged with their nearest neighbour.
  std::vector<std::pair<Index, Index>> clusters;  // [lo, hi] inclusive
  Index lo = 0;
  for (Index i = 1; i <= dim; ++i) {
    if (i == dim || (dest(i) - dest(i - 1)) > cluster_gap * dest(i)) {
      clusters.emplace_back(lo, i - 1);
      lo = i;
    }
  }
  for (std::size_t c = 0; c + 1 < clusters.size();) {
    if ((clusters[c].second - clusters[c].first + 1) % 2 != 0) {
      clusters[c].second = clusters[c + 1].second;
      clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(c) + 1);
    } else {
      ++c;
    }
  }
  if ((clusters.back().second - clusters.back().first + 1) % 2 != 0) {
    throw std::runtime_error("skew_schur: invariant-subspace pairing failed");
  }

  struct Plane {
    double d;
    Vector u;
    Vector v;
  };
  std::vector<Plane> planes;
  planes.reserve(static_cast<std::size_t>(dim / 2));

  for (const auto& [clo, chi] : clusters) {
    const Index size = chi - clo + 1;
    const Index pairs = size / 2;
    const Matrix w = es.eigenvectors().middleCols(clo, size);
    Matrix chosen(dim, size);
    Index nchosen = 0;

    for (Index p = 0; p < pairs; ++p) {
      // Pick the basis column with the largest component outside the span of
      // the planes already extracted, then re-orthogonalize twice.
      Index best = -1;
      double best_norm = -1.0;
      Vector best_res;
      for (Index c = 0; c < size; ++c) {
        Vector r = w.col(c);
        if (nchosen > 0) {
          r -= chosen.leftCols(nchosen) *
               (chosen.leftCols(nchosen).transpose() * w.col(c));
        }
        const double rn = r.norm();
        if (rn > best_norm) {
          best_norm = rn;
          best = c;
          best_res = std::move(r);
        }
      }
      Vector u = best_res / best_norm;
      if (nchosen > 0) {
        u -= chosen.leftCols(nchosen) * (chosen.leftCols(nchosen).transpose() * u);
        u.normalize();
      }
      // Deterministic sign: first appreciable component positive.
      for (Index l = 0; l < dim; ++l) {
        if (std::abs(u(l)) > 1e-8) {
          if (u(l) < 0) u = -u;
          break;
        }
      }
      Vector v = -(am * u);
      const double d = v.norm();
      v /= d;

      chosen.col(nchosen++) = u;
      chosen.col(nchosen++) = v;
      planes.push_back({d, std::move(u), std::move(v)});
    }
  }

  std::stable_sort(planes.begin(), planes.end(),
                   [](const Plane& x, const Plane& y) { return x.d < y.d; });

  SchurFactorization f;
  f.q.resize(dim, dim);
  f.d.resize(dim / 2);
  for (Index j = 0; j < dim / 2; ++j) {
    f.d(j) = planes[static_cast<std::size_t>(j)].d;
    f.q.col(2 * j) = planes[static_cast<std::size_t>(j)].u;
    f.q.col(2 * j + 1) = planes[static_cast<std::size_t>(j)].v;
  }
  return f;
}

Matrix skew_block_diagonal(const Vector& d) {
  const Index m = d.size();
  Matrix out = Matrix::Zero(2 * m, 2 * m);
  for (Index j = 0; j < m; ++j) {
    out(2 * j, 2 * j + 1) = d(j);
    out(2 * j + 1, 2 * j) = -d(j);
  }
  return out;
}

Matrix perfect_shuffle(Index n) {
  if (n < 1) {
    throw std::invalid_argument("perfect_shuffle: n must be positive");
  }
  Matrix p = Matrix::Zero(2 * n, 2 * n);
  for (Index j = 0; j < n; ++j) {
    p(2 * j, j) = 1.0;
    p(2 * j + 1, n + j) = 1.0;
  }
  return p;
}

Matrix givens_symplectic(Index n, Index plane, double theta) {
  if (n < 1) {
    throw std::invalid_argument("givens_symplectic: n must be positive");
  }
  if (plane < 0 || plane >= n) {
    throw std::out_of_range("givens_symplectic: plane index out of range");
  }
  Matrix r = Matrix::Identity(2 * n, 2 * n);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  r(plane, plane) = c;
  r(plane, n + plane) = s;
  r(n + plane, plane) = -s;
  r(n + plane, n + plane) = c;
  return r;
}

Matrix dab(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) {
    throw std::invalid_argument("dab: need at least one block");
  }
  Index total = 0;
  for (const Matrix& b : blocks) {
    if (b.rows() != b.cols() || b.rows() == 0 || b.rows() % 2 != 0) {
      throw std::invalid_argument(
          "dab: every block must be square with even dimension");
    }
    total += b.rows() / 2;
  }
  Matrix out = Matrix::Zero(2 * total, 2 * total);
  Index offset = 0;
  for (const Matrix& b : blocks) {
    const Index m = b.rows() / 2;
    out.block(offset, offset, m, m) = b.topLeftCorner(m, m);
    out.block(offset, total + offset, m, m) = b.topRightCorner(m, m);
    out.block(total + offset, offset, m, m) = b.bottomLeftCorner(m, m);
    out.block(total + offset, total + offset, m, m) = b.bottomRightCorner(m, m);
    offset += m;
  }
  return out;
}

}  // namespace speig
