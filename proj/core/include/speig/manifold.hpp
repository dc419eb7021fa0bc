#pragma once

#include "speig/types.hpp"

namespace speig {

/// How the Cayley resolvent is solved.  Auto picks the low-rank update when
/// the frame is slim (8k <= n) and the dense solve otherwise.
enum class CayleySolve { Auto, Dense, LowRank };

/// Tangency defect ||B - B^T||_F with B = Z^T J X; zero iff Z is tangent to
/// the symplectic Stiefel manifold at X.
double tangent_residual(const SymplecticFrame& x, const Matrix& z);

/// Riemannian metric
///   g_rho(Z1, Z2) = tr(Z1^T ((1/rho) J X X^T J^T - (J X J_{2k} X^T J^T - J)^2) Z2).
/// Rejects non-tangent inputs (relative tangency defect above tol::tangent).
double metric_g_rho(const SymplecticFrame& x, const Matrix& z1,
                    const Matrix& z2, double rho);

/// Symmetric gradient generator A = 2 (U V^T + V U^T) held in factored form;
/// the Riemannian gradient of the trace cost at X is A J X and the Cayley
/// retraction uses A through its rank-4k factors.
class GradientFactor {
 public:
  GradientFactor(Matrix u, Matrix v, double rho);

  const Matrix& factor_u() const { return u_; }
  const Matrix& factor_v() const { return v_; }
  double rho() const { return rho_; }

  /// A = 2 (U V^T + V U^T), formed densely (2n x 2n).
  Matrix dense() const;

  /// A J X without forming A.
  Matrix gradient(const Matrix& x) const;

 private:
  Matrix u_;
  Matrix v_;
  double rho_;
};

/// Gradient generator of f(X) = tr(X^T M X) at a feasible frame,
///   A_X = 4 sym(H_X M X (X J_{2k})^T),
///   H_X = I + (rho/2) X X^T - J X (X^T X)^{-1} X^T J^T,
/// returned in factored form.  Signals IllConditionedFrame when the Gram
/// matrix X^T X cannot be inverted reliably.
GradientFactor riemannian_gradient(const SpdMatrix& m, const SymplecticFrame& x,
                                   double rho);

/// Same, reusing a precomputed product M X.
GradientFactor riemannian_gradient_from_mx(const Matrix& mx,
                                           const SymplecticFrame& x,
                                           double rho);

/// Cayley step along +S J X for a symmetric generator S:
///   Y = (I - (t/2) S J)^{-1} (I + (t/2) S J) X.
/// Dense solve; exact symplecticity of the transform keeps Y feasible.
SymplecticFrame cayley_step(const SymplecticFrame& x, const Matrix& s,
                            double t);

/// Cayley retraction along the negative gradient direction:
///   R_X(-t grad) = (I + (t/2) A J)^{-1} (I - (t/2) A J) X.
/// LowRank uses a Sherman-Morrison-Woodbury update with a 4k x 4k core.
SymplecticFrame cayley_retract(const SymplecticFrame& x,
                               const GradientFactor& a, double t,
                               CayleySolve solve = CayleySolve::Auto);

namespace detail {
/// g_rho without the tangency precondition check; the optimizer evaluates
/// gradient norms through this (computed gradients are tangent only up to
/// rounding, which the public check may flag once the norm is tiny).
double metric_g_rho_unchecked(const SymplecticFrame& x, const Matrix& z1,
                              const Matrix& z2, double rho);
}  // namespace detail

}  // namespace speig
