#include <speig/linalg.hpp>
#include <speig/manifold.hpp>
#include <speig/optimizer.hpp>
#include <speig/problems.hpp>
#include <speig/williamson.hpp>

#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace speig;
using namespace speig::testing;

namespace {

// dense evaluation of the metric formula, used as its own oracle
double metric_dense(const SymplecticFrame& xf, const Matrix& z1,
                    const Matrix& z2, double rho) {
  const Matrix& x = xf.matrix();
  const Index n2 = x.rows();
  const Matrix j = poisson_matrix(n2 / 2);
  const Matrix jk = poisson_matrix(xf.k());
  const Matrix jx = j * x;
  const Matrix inner = (1.0 / rho) * jx * jx.transpose();
  const Matrix outer = jx * jk * x.transpose() * j.transpose() - j;
  const Matrix weight = inner - outer * outer;
  return (z1.transpose() * weight * z2).trace();
}

double frob_inner(const Matrix& a, const Matrix& b) {
  return (a.array() * b.array()).sum();
}

}  // namespace

TEST_CASE("tangent_residual separates tangent from non-tangent directions") {
  std::mt19937_64 rng(2);
  const SymplecticFrame x = random_symplectic_frame(5, 2, rng);

  const Matrix a = random_symmetric(10, rng);
  const Matrix z = a * jprod(x.matrix());
  CHECK(tangent_residual(x, z) <= 1e-12 * z.norm());

  CHECK(tangent_residual(x, Matrix::Zero(10, 4)) == 0.0);

  // Z = X has defect ||2 J_{2k}||_F = 2 sqrt(2k)
  CHECK(tangent_residual(x, x.matrix()) ==
        doctest::Approx(2.0 * std::sqrt(4.0)).epsilon(1e-10));
}

TEST_CASE("metric_g_rho matches the dense formula and is an inner product") {
  std::mt19937_64 rng(12);
  const SymplecticFrame x = random_symplectic_frame(4, 2, rng);
  const Matrix z1 = random_symmetric(8, rng) * jprod(x.matrix());
  const Matrix z2 = random_symmetric(8, rng) * jprod(x.matrix());

  for (double rho : {0.7, 1.0, 3.0}) {
    const double g12 = metric_g_rho(x, z1, z2, rho);
    const double g21 = metric_g_rho(x, z2, z1, rho);
    CHECK(g12 == doctest::Approx(g21).epsilon(1e-12));
    CHECK(g12 ==
          doctest::Approx(metric_dense(x, z1, z2, rho)).epsilon(1e-10));
    CHECK(metric_g_rho(x, z1, z1, rho) > 0.0);
  }

  CHECK(metric_g_rho(x, Matrix::Zero(8, 4), Matrix::Zero(8, 4), 1.0) == 0.0);
  // canonical frame at the smallest size, evaluated against the formula
  const SymplecticFrame e = SymplecticFrame::canonical(2, 1);
  const Matrix ze = random_symmetric(4, rng) * jprod(e.matrix());
  CHECK(metric_g_rho(e, ze, ze, 1.0) ==
        doctest::Approx(metric_dense(e, ze, ze, 1.0)).epsilon(1e-12));

  CHECK_THROWS_AS(metric_g_rho(x, x.matrix(), z2, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(metric_g_rho(x, z1, z2, 0.0), std::invalid_argument);
  CHECK(detail::metric_g_rho_unchecked(x, z1, z2, 1.0) ==
        doctest::Approx(metric_g_rho(x, z1, z2, 1.0)).epsilon(1e-14));
}

TEST_CASE("GradientFactor dense and factored forms agree") {
  std::mt19937_64 rng(44);
  const Matrix u = gaussian(8, 4, rng);
  const Matrix v = gaussian(8, 4, rng);
  const GradientFactor f(u, v, 1.0);
  const Matrix a = 2.0 * (u * v.transpose() + v * u.transpose());
  CHECK((f.dense() - a).norm() <= 1e-13 * a.norm());

  const SymplecticFrame x = random_symplectic_frame(4, 1, rng);
  CHECK((f.gradient(x.matrix()) - a * jprod(x.matrix())).norm() <=
        1e-12 * a.norm());
}

TEST_CASE("riemannian_gradient vanishes at eigenvector sets") {
  std::mt19937_64 rng(3);
  const SpdMatrix m = random_spd(12, rng);
  const WilliamsonForm w = williamson_general(m);
  const SymplecticFrame x(eigvec_set(w.s.matrix(), {0, 1}), 1e-8);
  const GradientFactor g = riemannian_gradient(m, x, 1.0);
  const Matrix grad = g.gradient(x.matrix());
  CHECK(grad.norm() <= 1e-6 * m.matrix().norm());
}

TEST_CASE("riemannian_gradient satisfies the finite-difference identity") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const SpdMatrix m = random_spd(12, rng);
    const SymplecticFrame x = random_symplectic_frame(6, 2, rng);
    const double rho = trial % 2 == 0 ? 1.0 : 2.5;

    Matrix s = random_symmetric(12, rng);
    s /= s.norm();
    const Matrix z = s * jprod(x.matrix());

    const GradientFactor gf = riemannian_gradient(m, x, rho);
    const Matrix grad = gf.gradient(x.matrix());
    const double g_grad_z = metric_g_rho(x, grad, z, rho);

    const double h = 1e-5;
    const double fp = trace_cost(m, cayley_step(x, s, h));
    const double fm = trace_cost(m, cayley_step(x, s, -h));
    const double fd = (fp - fm) / (2.0 * h);
    CHECK(std::abs(fd - g_grad_z) <= 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("the negative gradient is a descent direction") {
  std::mt19937_64 rng(52);
  const SpdMatrix m = random_spd(10, rng);
  const SymplecticFrame x = random_symplectic_frame(5, 2, rng);
  const GradientFactor gf = riemannian_gradient(m, x, 1.0);
  const Matrix grad = gf.gradient(x.matrix());
  const double g2 = metric_g_rho(x, grad, grad, 1.0);
  CHECK(g2 > 0.0);

  const double h = 1e-6;
  const double fp = trace_cost(m, cayley_retract(x, gf, h));
  const double fm = trace_cost(m, cayley_retract(x, gf, -h));
  CHECK((fp - fm) / (2.0 * h) ==
        doctest::Approx(-g2).epsilon(1e-4));
}

TEST_CASE("cayley_retract is the identity at t = 0 and stays feasible") {
  std::mt19937_64 rng(9);
  const SpdMatrix m = random_spd(12, rng);
  const SymplecticFrame x = random_symplectic_frame(6, 2, rng);
  const GradientFactor gf = riemannian_gradient(m, x, 1.0);

  const SymplecticFrame x0 = cayley_retract(x, gf, 0.0);
  CHECK((x0.matrix() - x.matrix()).norm() <= 1e-14 * x.matrix().norm());

  for (double t : {1e-3, 1e-2, 1e-1}) {
    CHECK(cayley_retract(x, gf, t).residual() <= 1e-10);
  }
}

TEST_CASE("cayley_retract is first-order consistent with X - t grad") {
  std::mt19937_64 rng(77);
  const SpdMatrix m = random_spd(12, rng);
  const SymplecticFrame x = random_symplectic_frame(6, 2, rng);
  const GradientFactor gf = riemannian_gradient(m, x, 1.0);
  const Matrix grad = gf.gradient(x.matrix());

  const std::vector<double> ts = {1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> errs;
  for (double t : ts) {
    const SymplecticFrame xt = cayley_retract(x, gf, t);
    errs.push_back((xt.matrix() - (x.matrix() - t * grad)).norm());
  }
  // least-squares slope of log err against log t
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(ts.size());
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(ts[i]);
    const double ly = std::log(errs[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope >= 1.9);
}

TEST_CASE("feasibility does not drift over 1000 composed retractions") {
  std::mt19937_64 rng(101);
  const SpdMatrix m = random_spd(12, rng);
  SymplecticFrame x = random_symplectic_frame(6, 2, rng);
  double worst = x.residual();
  for (int step = 0; step < 1000; ++step) {
    const GradientFactor gf = riemannian_gradient(m, x, 1.0);
    x = cayley_retract(x, gf, 1e-3);
    worst = std::max(worst, x.residual());
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("dense and low-rank Cayley solves coincide") {
  std::mt19937_64 rng(63);
  const SpdMatrix m = random_spd(40, rng);  // n = 20, k = 2: 8k <= n
  const SymplecticFrame x = random_symplectic_frame(20, 2, rng);
  const GradientFactor gf = riemannian_gradient(m, x, 1.0);
  for (double t : {1e-3, 1e-2, 1e-1}) {
    const Matrix dense = cayley_retract(x, gf, t, CayleySolve::Dense).matrix();
    const Matrix lowrank =
        cayley_retract(x, gf, t, CayleySolve::LowRank).matrix();
    CHECK((dense - lowrank).norm() <= 1e-12 * dense.norm());
  }
}

TEST_CASE("cayley_step follows its generator to first order") {
  std::mt19937_64 rng(71);
  const SymplecticFrame x = random_symplectic_frame(5, 2, rng);
  Matrix s = random_symmetric(10, rng);
  const double t = 1e-6;
  const SymplecticFrame xt = cayley_step(x, s, t);
  const Matrix z = s * jprod(x.matrix());
  CHECK((xt.matrix() - x.matrix() - t * z).norm() <= 1e-10 * z.norm());
  CHECK(xt.residual() <= 1e-10);
  CHECK_THROWS_AS(cayley_step(x, gaussian(10, 10, rng), 0.1),
                  StructureViolation);
}

TEST_CASE("a singular resolvent raises RetractionBreakdown") {
  // A = diag(1, -1) makes A J = [[0, 1], [1, 0]]; at t = 2 the resolvent
  // I + (t/2) A J has eigenvalue 0
  const Matrix u = Matrix::Identity(2, 2);
  Matrix v(2, 2);
  v << 0.25, 0, 0, -0.25;
  const GradientFactor a(u, v, 1.0);
  const SymplecticFrame x = SymplecticFrame::canonical(1, 1);
  CHECK_THROWS_AS(cayley_retract(x, a, 2.0, CayleySolve::Dense),
                  RetractionBreakdown);
  CHECK(cayley_retract(x, a, 0.5, CayleySolve::Dense).residual() <= 1e-12);
}
