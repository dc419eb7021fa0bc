#include "speig/manifold.hpp"

#include "speig/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace speig {

namespace {

void require_tangent_shape(const SymplecticFrame& x, const Matrix& z,
                           const char* what) {
  if (z.rows() != x.rows() || z.cols() != x.cols()) {
    throw std::invalid_argument(std::string(what) +
                                ": tangent matrix shape mismatch with frame");
  }
}

// g_rho in its stabilized form: with G = J X and the skew W = G J_{2k} G^T - J,
//   g_rho(Z1, Z2) = (1/rho) <G^T Z1, G^T Z2> + <W Z1, W Z2>.
double metric_unchecked(const SymplecticFrame& x, const Matrix& z1,
                        const Matrix& z2, double rho) {
  const Matrix g = jprod(x.matrix());
  const Matrix gtz1 = g.transpose() * z1;
  const Matrix gtz2 = g.transpose() * z2;
  const Matrix wz1 = g * jprod(gtz1) - jprod(z1);
  const Matrix wz2 = g * jprod(gtz2) - jprod(z2);
  return (1.0 / rho) * (gtz1.array() * gtz2.array()).sum() +
         (wz1.array() * wz2.array()).sum();
}

SymplecticFrame frame_or_breakdown(Matrix y, const SymplecticFrame& x,
                                   const char* what) {
  const double accept = std::max(tol::frame_accept, 10.0 * x.residual());
  try {
    return SymplecticFrame(std::move(y), accept);
  } catch (const std::invalid_argument& e) {
    std::ostringstream msg;
    msg << what << ": produced an infeasible frame (" << e.what() << ")";
    throw RetractionBreakdown(msg.str());
  }
}

}  // namespace

double tangent_residual(const SymplecticFrame& x, const Matrix& z) {
  require_tangent_shape(x, z, "tangent_residual");
  const Matrix b = z.transpose() * jprod(x.matrix());
  return (b - b.transpose()).norm();
}

double metric_g_rho(const SymplecticFrame& x, const Matrix& z1,
                    const Matrix& z2, double rho) {
  if (!(rho > 0.0)) {
    throw std::invalid_argument("metric_g_rho: rho must be positive");
  }
  require_tangent_shape(x, z1, "metric_g_rho");
  require_tangent_shape(x, z2, "metric_g_rho");
  for (const Matrix* z : {&z1, &z2}) {
    const double zn = z->norm();
    // Vectors at rounding level cannot be classified; let them through.
    if (zn <= 1e-12 * std::max(1.0, x.matrix().squaredNorm())) continue;
    const double defect = tangent_residual(x, *z);
    if (defect > tol::tangent * zn * std::max(1.0, x.matrix().norm())) {
      std::ostringstream msg;
      msg << "metric_g_rho: input is not tangent (relative defect "
          << defect / zn << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  return metric_unchecked(x, z1, z2, rho);
}

GradientFactor::GradientFactor(Matrix u, Matrix v, double rho)
    : u_(std::move(u)), v_(std::move(v)), rho_(rho) {
  if (u_.rows() != v_.rows() || u_.cols() != v_.cols() || u_.rows() == 0) {
    throw std::invalid_argument("GradientFactor: factor shape mismatch");
  }
  if (!(rho_ > 0.0)) {
    throw std::invalid_argument("GradientFactor: rho must be positive");
  }
}

Matrix GradientFactor::dense() const {
  Matrix a = u_ * v_.transpose();
  a = 2.0 * (a + a.transpose()).eval();
  return a;
}

Matrix GradientFactor::gradient(const Matrix& x) const {
  const Matrix jx = jprod(x);
  return 2.0 * (u_ * (v_.transpose() * jx)) + 2.0 * (v_ * (u_.transpose() * jx));
}

GradientFactor riemannian_gradient(const SpdMatrix& m, const SymplecticFrame& x,
                                   double rho) {
  if (m.dim() != x.rows()) {
    throw std::invalid_argument("riemannian_gradient: dimension mismatch");
  }
  return riemannian_gradient_from_mx(m.matrix() * x.matrix(), x, rho);
}

GradientFactor riemannian_gradient_from_mx(const Matrix& mx,
                                           const SymplecticFrame& x,
                                           double rho) {
  if (mx.rows() != x.rows() || mx.cols() != x.cols()) {
    throw std::invalid_argument(
        "riemannian_gradient_from_mx: product shape mismatch");
  }
  if (!(rho > 0.0)) {
    throw std::invalid_argument("riemannian_gradient_from_mx: rho > 0 required");
  }
  const Matrix& xm = x.matrix();

  Matrix gram = xm.transpose() * xm;
  gram = 0.5 * (gram + gram.transpose()).eval();
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success || llt.rcond() < tol::singular) {
    std::ostringstream msg;
    msg << "riemannian_gradient: Gram matrix condition exceeds "
        << 1.0 / tol::singular;
    throw IllConditionedFrame(msg.str());
  }

  // U = H_X M X = M X + (rho/2) X (X^T M X) - J X (X^T X)^{-1} X^T J^T M X.
  Matrix u = mx + 0.5 * rho * (xm * (xm.transpose() * mx)) -
             jprod(Matrix(xm * llt.solve(Matrix(xm.transpose() * jtprod(mx)))));
  Matrix v = prodj(xm);
  return GradientFactor(std::move(u), std::move(v), rho);
}

SymplecticFrame cayley_step(const SymplecticFrame& x, const Matrix& s,
                            double t) {
  if (s.rows() != x.rows() || s.cols() != x.rows()) {
    throw std::invalid_argument("cayley_step: generator shape mismatch");
  }
  const double scale = std::max(s.cwiseAbs().maxCoeff(), 1e-300);
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > tol::symmetry * scale) {
    throw StructureViolation("cayley_step: generator must be symmetric");
  }
  if (t == 0.0) return x;

  const Index dim = x.rows();
  const Matrix sj = prodj(s);
  const Matrix lhs = Matrix::Identity(dim, dim) - 0.5 * t * sj;
  const Matrix rhs = x.matrix() + 0.5 * t * (sj * x.matrix());
  Eigen::PartialPivLU<Matrix> lu(lhs);
  Matrix y = lu.solve(rhs);
  if ((lhs * y - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm())) {
    throw RetractionBreakdown("cayley_step: resolvent is numerically singular");
  }
  return frame_or_breakdown(std::move(y), x, "cayley_step");
}

SymplecticFrame cayley_retract(const SymplecticFrame& x,
                               const GradientFactor& a, double t,
                               CayleySolve solve) {
  if (a.factor_u().rows() != x.rows()) {
    throw std::invalid_argument("cayley_retract: factor dimension mismatch");
  }
  if (t == 0.0) return x;

  if (solve == CayleySolve::Auto) {
    solve = (x.n() > 4 * x.k()) ? CayleySolve::LowRank : CayleySolve::Dense;
  }
  const double c = 0.5 * t;

  if (solve == CayleySolve::LowRank) {
    // A J = G1 Ghat^T with G1 = [2U 2V] and Ghat = J^T [V U]; the resolvent
    // inverse is a Sherman-Morrison-Woodbury update with a 4k x 4k core.
    const Index dim = x.rows();
    const Index w = 2 * x.cols();
    Matrix g1(dim, w);
    g1.leftCols(x.cols()) = 2.0 * a.factor_u();
    g1.rightCols(x.cols()) = 2.0 * a.factor_v();
    Matrix g2(dim, w);
    g2.leftCols(x.cols()) = a.factor_v();
    g2.rightCols(x.cols()) = a.factor_u();
    const Matrix ghat = jtprod(g2);

    const Matrix wmat = x.matrix() - c * (g1 * (ghat.transpose() * x.matrix()));
    const Matrix core =
        Matrix::Identity(w, w) + c * (ghat.transpose() * g1);
    Eigen::FullPivLU<Matrix> lu(core);
    if (!lu.isInvertible()) {
      throw RetractionBreakdown(
          "cayley_retract: low-rank resolvent core is singular");
    }
    const Matrix rhs_small = ghat.transpose() * wmat;
    const Matrix sol = lu.solve(rhs_small);
    if ((core * sol - rhs_small).norm() >
        1e-8 * std::max(1.0, rhs_small.norm())) {
      throw RetractionBreakdown(
          "cayley_retract: low-rank resolvent core is numerically singular");
    }
    Matrix y = wmat - c * (g1 * sol);
    return frame_or_breakdown(std::move(y), x, "cayley_retract");
  }

  const Index dim = x.rows();
  const Matrix aj = prodj(a.dense());
  const Matrix lhs = Matrix::Identity(dim, dim) + c * aj;
  const Matrix rhs = x.matrix() - c * (aj * x.matrix());
  Eigen::PartialPivLU<Matrix> lu(lhs);
  Matrix y = lu.solve(rhs);
  if ((lhs * y - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm())) {
    throw RetractionBreakdown(
        "cayley_retract: resolvent is numerically singular");
  }
  return frame_or_breakdown(std::move(y), x, "cayley_retract");
}

namespace detail {

double metric_g_rho_unchecked(const SymplecticFrame& x, const Matrix& z1,
                              const Matrix& z2, double rho) {
  return metric_unchecked(x, z1, z2, rho);
}

}  // namespace detail

}  // namespace speig
