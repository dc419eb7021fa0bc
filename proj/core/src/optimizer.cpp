#include "speig/optimizer.hpp"

#include "speig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace speig {

void OptimizerConfig::validate() const {
  if (!(rho > 0.0)) throw std::invalid_argument("OptimizerConfig: rho > 0");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("OptimizerConfig: beta in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("OptimizerConfig: delta in (0, 1)");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("OptimizerConfig: alpha in [0, 1]");
  }
  if (!(gamma0 > 0.0)) throw std::invalid_argument("OptimizerConfig: gamma0 > 0");
  if (!(gamma_min > 0.0 && gamma_min < gamma_max)) {
    throw std::invalid_argument("OptimizerConfig: 0 < gamma_min < gamma_max");
  }
  if (gamma_max != 1.0) {
    throw std::invalid_argument("OptimizerConfig: gamma_max is fixed to 1");
  }
  if (!(epsilon_rel >= 0.0) || !(epsilon_abs >= 0.0) ||
      !(epsilon_rel > 0.0 || epsilon_abs > 0.0)) {
    throw std::invalid_argument(
        "OptimizerConfig: need a positive stopping tolerance");
  }
  if (max_iter < 0) throw std::invalid_argument("OptimizerConfig: max_iter >= 0");
  if (max_backtracks < 1) {
    throw std::invalid_argument("OptimizerConfig: max_backtracks >= 1");
  }
}

double trace_cost(const SpdMatrix& m, const SymplecticFrame& x) {
  if (m.dim() != x.rows()) {
    throw std::invalid_argument("trace_cost: dimension mismatch");
  }
  const Matrix mx = m.matrix() * x.matrix();
  return (x.matrix().array() * mx.array()).sum();
}

double bb_trial_step(const Matrix& w, const Matrix& y, int m,
                     const OptimizerConfig& cfg) {
  const double wy = (w.array() * y.array()).sum();
  double gamma;
  if (m % 2 != 0) {
    const double ww = w.squaredNorm();
    gamma = ww / std::abs(wy);
  } else {
    const double yy = y.squaredNorm();
    gamma = std::abs(wy) / yy;
  }
  if (!std::isfinite(gamma) || gamma <= 0.0) gamma = cfg.gamma0;
  return std::clamp(gamma, cfg.gamma_min, cfg.gamma_max);
}

LineSearchResult line_search(const SpdMatrix& m, const SymplecticFrame& x,
                             const GradientFactor& grad_factor,
                             double gamma_trial, double c,
                             const OptimizerConfig& cfg) {
  const Matrix grad = grad_factor.gradient(x.matrix());
  const double slope =
      -detail::metric_g_rho_unchecked(x, grad, grad, grad_factor.rho());

  double t = gamma_trial;
  for (int l = 0; l <= cfg.max_backtracks; ++l, t *= cfg.delta) {
    bool feasible_trial = true;
    SymplecticFrame xt = x;
    try {
      xt = cayley_retract(x, grad_factor, t, cfg.solve);
    } catch (const RetractionBreakdown&) {
      feasible_trial = false;
    }
    if (!feasible_trial) continue;
    Matrix mxt = m.matrix() * xt.matrix();
    const double ft = (xt.matrix().array() * mxt.array()).sum();
    // Below this threshold a difference of cost values is dominated by
    // rounding noise.  Evaluating tr(X^T M X) accumulates roundoff in
    // proportion to the magnitude sum of its terms, which dwarfs the cost
    // value itself whenever the quadratic form cancels heavily.
    const double noise_scale =
        (xt.matrix().array().abs() * mxt.array().abs()).sum();
    const double fp_floor = 24.0 * std::numeric_limits<double>::epsilon() *
                            std::max({1.0, std::abs(c), noise_scale});
    // Once the sufficient-decrease margin of the full trial step cannot be
    // resolved in the cost, backtracking on cost comparisons would only
    // shrink the step to a rounding-level no-op.  The raw Barzilai-Borwein
    // step uses gradient information only and remains effective in this
    // regime, so take it as is.
    const bool unresolvable =
        cfg.beta * gamma_trial * std::abs(slope) <= fp_floor;
    if (unresolvable || ft <= c + cfg.beta * t * slope + fp_floor) {
      return {t, l, std::move(xt), std::move(mxt), ft, unresolvable};
    }
  }
  std::ostringstream msg;
  msg << "line_search: no acceptable step within " << cfg.max_backtracks
      << " backtracks (gamma_trial " << gamma_trial << ", reference value " << c
      << ", slope " << slope << ")";
  throw LineSearchFailure(msg.str(), {});
}

MinimizeResult minimize(const SpdMatrix& m, Index k,
                        const OptimizerConfig& cfg) {
  if (m.dim() % 2 != 0) {
    throw std::invalid_argument("minimize: matrix dimension must be even");
  }
  return minimize(m, k, SymplecticFrame::canonical(m.dim() / 2, k), cfg);
}

MinimizeResult minimize(const SpdMatrix& m, Index k, const SymplecticFrame& x0,
                        const OptimizerConfig& cfg) {
  cfg.validate();
  if (m.dim() % 2 != 0 || x0.rows() != m.dim() || x0.k() != k || k < 1 ||
      k > x0.n()) {
    throw std::invalid_argument("minimize: inconsistent problem dimensions");
  }

  SymplecticFrame x = x0;
  Matrix mx = m.matrix() * x.matrix();
  double f = (x.matrix().array() * mx.array()).sum();
  const double stop =
      std::max(cfg.epsilon_abs, cfg.epsilon_rel * (1.0 + std::abs(f)));

  GradientFactor gf = riemannian_gradient_from_mx(mx, x, cfg.rho);
  Matrix grad = gf.gradient(x.matrix());
  double gnorm = std::sqrt(
      std::max(0.0, detail::metric_g_rho_unchecked(x, grad, grad, cfg.rho)));

  double c = f;
  double q = 1.0;
  IterationTrace trace;
  if (cfg.keep_trace) {
    trace.push_back({0, f, gnorm, grad.norm(), 0.0, 0, x.residual(), c, false});
  }

  Matrix prev_x, prev_z;
  int iterations = 0;
  bool converged = gnorm <= stop;

  for (int it = 0; it < cfg.max_iter && !converged; ++it) {
    const double gamma =
        (it == 0) ? std::clamp(cfg.gamma0, cfg.gamma_min, cfg.gamma_max)
                  : bb_trial_step(Matrix(x.matrix() - prev_x),
                                  Matrix(-grad - prev_z), it, cfg);

    prev_x = x.matrix();
    prev_z = -grad;

    LineSearchResult ls = [&] {
      try {
        return line_search(m, x, gf, gamma, c, cfg);
      } catch (LineSearchFailure& e) {
        throw LineSearchFailure(e.what(), std::move(trace));
      }
    }();

    x = std::move(ls.x);
    mx = std::move(ls.mx);
    f = ls.f;
    iterations = it + 1;

    const double qn = cfg.alpha * q + 1.0;
    c = (cfg.alpha * q * c + f) / qn;
    q = qn;

    gf = riemannian_gradient_from_mx(mx, x, cfg.rho);
    grad = gf.gradient(x.matrix());
    gnorm = std::sqrt(
        std::max(0.0, detail::metric_g_rho_unchecked(x, grad, grad, cfg.rho)));

    if (cfg.keep_trace) {
      trace.push_back({iterations, f, gnorm, grad.norm(), ls.t, ls.backtracks,
                       x.residual(), c, ls.unguarded});
    }
    converged = gnorm <= stop;
  }

  bool saddle = false;
  if (converged && cfg.certificate_f) {
    const double cert = *cfg.certificate_f;
    saddle = f > cert + 1e-6 * (1.0 + std::abs(cert));
  }

  return {std::move(x), f,         gnorm, iterations,
          converged,    saddle, std::move(trace)};
}

}  // namespace speig
