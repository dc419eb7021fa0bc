#pragma once

#include "speig/manifold.hpp"
#include "speig/types.hpp"

#include <optional>
#include <vector>

namespace speig {

struct OptimizerConfig {
  double rho = 1.0;       // metric parameter
  double beta = 1e-4;     // sufficient-decrease slope factor
  double delta = 0.5;     // backtracking shrink factor
  double alpha = 0.85;    // non-monotone averaging weight
  double gamma0 = 1e-3;   // initial and fallback trial step
  double gamma_min = 1e-15;
  double gamma_max = 1.0;  // fixed upper clamp for BB steps
  // Stop once ||grad||_g <= max(epsilon_abs, epsilon_rel * (1 + |f(X0)|)).
  double epsilon_rel = 1e-6;
  double epsilon_abs = 0.0;
  int max_iter = 5000;
  int max_backtracks = 60;
  CayleySolve solve = CayleySolve::Auto;
  bool keep_trace = true;
  // Known optimal value, when available: a converged run whose cost exceeds
  // it meaningfully is flagged saddle_suspected.
  std::optional<double> certificate_f;

  void validate() const;  // throws std::invalid_argument
};

struct IterationRecord {
  int m;
  double f;
  double grad_norm;         // gradient norm in g_rho
  double grad_norm_euclid;  // Frobenius norm of the gradient
  double step;              // accepted step length (0 for the initial record)
  int backtracks;
  double feasibility;       // symplecticity residual of the iterate
  double c;                 // non-monotone reference value c_m
  // True when the step was accepted without the sufficient-decrease test
  // because its predicted decrease was below the rounding resolution of f;
  // the envelope f <= c_m is only guaranteed on records with this unset.
  bool unguarded = false;
};
using IterationTrace = std::vector<IterationRecord>;

/// Line search could not satisfy the acceptance condition within
/// max_backtracks; carries the trace accumulated so far.
class LineSearchFailure : public std::runtime_error {
 public:
  LineSearchFailure(const std::string& msg, IterationTrace trace_so_far)
      : std::runtime_error(msg), trace(std::move(trace_so_far)) {}

  IterationTrace trace;
};

/// f(X) = tr(X^T M X).
double trace_cost(const SpdMatrix& m, const SymplecticFrame& x);

/// Alternating Barzilai-Borwein trial step from the differences
/// W = X^{(m)} - X^{(m-1)} and Y = Z^{(m)} - Z^{(m-1)}: odd m uses
/// <W,W>/|<W,Y>|, even m uses |<W,Y>|/<Y,Y> (Euclidean trace inner
/// products).  Degenerate denominators fall back to gamma0; the result is
/// clamped to [gamma_min, gamma_max].
double bb_trial_step(const Matrix& w, const Matrix& y, int m,
                     const OptimizerConfig& cfg);

struct LineSearchResult {
  double t;
  int backtracks;
  SymplecticFrame x;  // accepted iterate
  Matrix mx;          // M * x, reusable for the gradient at x
  double f;
  bool unguarded;  // accepted without the sufficient-decrease test
};

/// Backtracking along the Cayley curve through X against the non-monotone
/// reference value c: accepts the first t = gamma_trial * delta^l with
/// f(R_X(-t grad)) <= c + beta t g_rho(grad, -grad).  A retraction breakdown
/// at some t counts as a failed trial.  Throws LineSearchFailure (with an
/// empty trace) after max_backtracks rejections.
///
/// When the predicted decrease of the full trial step is below the rounding
/// resolution of the cost (beta * gamma_trial * |slope| within roughly a
/// couple dozen ulps of c), cost comparisons carry no information and the
/// trial step is accepted as is; the result is then marked unguarded.  This
/// keeps the raw Barzilai-Borwein iteration running in the deep tail where a
/// backtracking test on f would stall at rounding-level steps.
LineSearchResult line_search(const SpdMatrix& m, const SymplecticFrame& x,
                             const GradientFactor& grad_factor,
                             double gamma_trial, double c,
                             const OptimizerConfig& cfg);

struct MinimizeResult {
  SymplecticFrame x;
  double f;
  double grad_norm;  // in g_rho, at the returned iterate
  int iterations;    // accepted steps
  bool converged;
  bool saddle_suspected;
  IterationTrace trace;
};

/// Riemannian trace minimization over 2n x 2k symplectic frames with
/// alternating BB steps and non-monotone line search.  The default start is
/// the canonical frame.
MinimizeResult minimize(const SpdMatrix& m, Index k,
                        const OptimizerConfig& cfg = {});
MinimizeResult minimize(const SpdMatrix& m, Index k, const SymplecticFrame& x0,
                        const OptimizerConfig& cfg = {});

}  // namespace speig
