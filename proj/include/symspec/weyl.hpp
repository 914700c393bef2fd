#ifndef SYMSPEC_WEYL_HPP
#define SYMSPEC_WEYL_HPP

#include <cstdint>
#include <vector>

#include "symspec/propagate.hpp"

namespace symspec {

/// Regular boundary function M_N = -(beta Ztilde_N)^{-1} (beta Zhat_N).
/// Throws SingularBoundary when beta Ztilde_N is numerically singular
/// (lambda is then an eigenvalue of the finite-section problem).
Mat regular_m(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
              const BoundaryMatrix& beta, Complex lambda, Index n_top);

/// Residual of the disk equation at index n_top for the candidate value m:
///   M - M* = (lambda - conj(lambda)) * sum_{k<N} X_k* Psi_k X_k,
/// with X = Zhat + Ztilde M. The sum is accumulated with rounding-floor
/// clipping, so the residual stays meaningful after the trial solution has
/// decayed below noise level.
double on_circle_residual(const SymplecticSystem& sys,
                          const BoundaryMatrix& alpha, Complex lambda,
                          Index n_top, const Mat& m);

struct MPlusEvaluation {
  Complex lambda;
  Mat value;  // n x n
  Index n_used = 0;
  double diameter = 0.0;  // beta-probe spread at n_used
  double on_circle = -1.0;
  bool converged = false;
  std::vector<Index> n_history;
  std::vector<double> spread_history;
};

struct LimitMOptions {
  double tol = 1e-8;
  Index n_min = 16;
  Index n_max = Index(1) << 20;
  std::uint64_t probe_seed = 0x5eed;
  bool circle_residual = true;  // skipped anyway past 1 << 16 steps
  std::vector<BoundaryMatrix> beta_probes;  // empty -> default set
};

std::vector<BoundaryMatrix> default_beta_probes(const BoundaryMatrix& alpha,
                                                std::uint64_t seed);

/// Adaptive doubling of the window until the probe spread and the doubling
/// increment both fall under tol. Never throws on slow convergence: the
/// evaluation comes back with converged = false when the window or overflow
/// cap is reached first. Persistent singularity across retries is reported
/// as DegenerateSystem.
MPlusEvaluation limit_m(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
                        Complex lambda, const LimitMOptions& opts = {});

/// X_k = Zhat_k + Ztilde_k M over the stored window.
WeightedSequence weyl_solution(const FundamentalSolution& fund, const Mat& m);

struct WeylColumns {
  WeightedSequence x;  // 2n x n over [0, n_top]
  Mat m_implied;       // alpha J X_0 after normalization alpha X_0 = I
};

/// Square-summable solution columns over [0, n_top], built by backward
/// recurrence from a window-plus-margin start index (the system's native
/// stepping direction damps everything but the decaying subspace), then
/// normalized by alpha X_0 = I. Stable where the forward formula
/// Zhat + Ztilde M loses the decaying solution to cancellation.
WeylColumns weyl_columns(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
                         Complex lambda, Index n_top, double tol = 1e-11);

enum class LimitPointVerdict { LimitPoint, Inconclusive };

struct LimitPointProbe {
  Complex lambda;
  int summable = 0;       // summable columns among the 2n basis columns
  double cross_wronskian = 0.0;
};

struct LimitPointReport {
  std::vector<LimitPointProbe> probes;
  LimitPointVerdict verdict = LimitPointVerdict::Inconclusive;
};

/// Numerical evidence for the limit point case: per probe, exactly n of the
/// 2n basis solution columns (Weyl columns and the Ztilde family) pass the
/// dyadic tail-decay test, and cross products X*(nu) J X(sigma) die out.
LimitPointReport diagnose_limit_point(const SymplecticSystem& sys,
                                      const std::vector<Complex>& probes,
                                      Index window, double tol = 1e-8);

}  // namespace symspec

#endif
