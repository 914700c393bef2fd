#ifndef SYMSPEC_CLASSIFY_HPP
#define SYMSPEC_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "symspec/mfunction.hpp"

namespace symspec {

enum class SpectrumVerdict {
  Resolvent,
  DiscreteEigenvalue,
  PointContinuous,
  Continuous,
  Undetermined
};

std::string to_string(SpectrumVerdict v);

/// Geometric schedule nu_j = nu0 * ratio^j, j = 0 .. count-1.
struct NuSchedule {
  double nu0 = 1e-1;
  double ratio = 0.5;
  int count = 15;

  std::vector<double> nodes() const;
};

/// Limit value of a matrix sequence sampled on a geometric parameter grid,
/// by a Richardson table; the diagonal entry with the smallest successive
/// change is reported together with that change as the residual.
struct Extrapolation {
  Mat value;
  double residual = 0.0;
  bool diverging = false;
  int nodes_used = 0;
};

Extrapolation richardson(const std::vector<Mat>& samples, double ratio,
                         int max_depth = 8);

struct BoundaryLimitResult {
  Mat value;          // lim nu -> 0 of nu * M(la0 + i nu)
  double residual;    // spread of the last two extrapolants
  std::vector<double> nu_used;
};

/// Richardson-extrapolated boundary limit of nu * M(la0 + i nu) over the
/// geometric schedule; nonzero exactly at the jump points of the spectral
/// function (value i * jump).
BoundaryLimitResult boundary_limit(const MFunction& mf, double lambda0,
                                   const NuSchedule& sched = {});

struct LaurentResult {
  Mat k_minus1, k0, k1;
  double herm_defect = 0.0;   // of K_{-1} before symmetrizing
  double refined_center = 0.0;  // pole estimate from the first contour moment
};

/// Contour coefficients K_m = (2 pi i)^{-1} oint M(la) (la - c)^{-m-1} d la
/// on |la - c| = rho with Q half-offset trapezoid nodes (exponentially
/// accurate for meromorphic integrands; no node touches the real axis).
/// Throws NotIsolated when K_{-1} fails the Hermitian check.
LaurentResult laurent_coeffs(const MFunction& mf, double center, double radius,
                             int q = 64, double herm_tol = 1e-4);

/// (1/pi) Integral of Im M(t + i nu) over [l1, l2] by adaptive quadrature,
/// extrapolated in nu over three halved nodes; approximates the spectral
/// increment tau(l2) - tau(l1) at continuity points.
Mat tau_increment(const MFunction& mf, double l1, double l2, double nu = 4e-3,
                  double quad_tol = 1e-7);

struct ClassifyOptions {
  NuSchedule sched;
  double eps_im = 1e-3;
  double eps_tau = 1e-5;
  double grid_step = 0.02;       // flank radii: delta = 10 * step, delta' = step
  double contour_radius = 0.1;   // clipped to 0.45 * neighbor_gap
  double neighbor_gap = 1e300;   // distance to the nearest other spectral point
  double tau_nu = 4e-3;
  double quad_tol = 1e-7;
  bool refine_pole = true;
  double peak_bracket = 0.0;  // half-width of the pole search; 0 -> grid_step
  // Run the contour test even when the extrapolated limit shows no mass
  // (a pole a hair away from lambda0 hides from the extrapolation).
  bool force_pole_test = false;
};

struct ClassificationRecord {
  double lambda0 = 0.0;
  SpectrumVerdict verdict = SpectrumVerdict::Undetermined;
  Mat l_hat;
  double l_residual = 0.0;
  double eps_l = 0.0;
  std::optional<Mat> k_minus1;
  std::optional<Mat> density;   // boundary density Im M(la0 + i0), extrapolated
  bool density_divergent = false;
  double density_residual = 0.0;
  double refined_lambda = 0.0;  // pole location after refinement
  double flank_low = -1.0, flank_high = -1.0;
  std::vector<double> nu_used;
  bool pole_candidate = false;
};

/// Decision procedure on the boundary behavior of M at a real point:
/// nonzero boundary limit with quiet flanks is an isolated eigenvalue,
/// nonzero limit with active flanks an embedded one; zero limit splits into
/// resolvent and continuous spectrum by the boundary density.
ClassificationRecord classify_point(const MFunction& mf, double lambda0,
                                    const ClassifyOptions& opts = {});
ClassificationRecord classify_point(const SymplecticSystem& sys,
                                    const BoundaryMatrix& alpha, double lambda0,
                                    const ClassifyOptions& opts = {});

struct EigenData {
  Mat k_minus1;
  WeightedSequence eigenfunction;  // columns Ztilde(la*) K_{-1}
  Mat gram;                        // weighted Gram of the columns
  double gram_vs_residue = 0.0;    // || gram + K_{-1} ||
  double boundary_residual = 0.0;  // || alpha Ztilde_0 K_{-1} ||
};

/// Eigenfunction columns and the residue consistency check gram = -K_{-1}.
/// Throws InconsistentResidue on a vanishing residue or a mismatch beyond
/// 100 * tol.
EigenData eigen_data(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
                     double lambda_star, const Mat& k_minus1,
                     Index window = 4096, double tol = 1e-3);

/// Boundary-trade formula between two boundary matrices:
///   M(la, alpha) = [aJh* + ah* Mh] [ah* - aJh* Mh]^{-1}.
/// Throws PoleOfTransform when the bracket is numerically singular.
Mat transform_alpha(const Mat& m_hat, const BoundaryMatrix& alpha,
                    const BoundaryMatrix& alpha_hat, double tol = 1e-12);

struct EigenvalueEntry {
  double lambda = 0.0;
  Mat k_minus1;
  double residual = 0.0;
};

struct SpectralMap {
  double a = 0.0, b = 0.0;
  int resolution = 0;
  std::vector<ClassificationRecord> records;
  std::vector<EigenvalueEntry> eigenvalues;
};

/// Classify a uniform grid, then refine pole candidates (local maxima of the
/// boundary-limit magnitude) by golden-section search and contour
/// extraction. Grid points classify independently; candidate refinement is
/// a single merge pass.
SpectralMap scan_spectrum(const MFunction& mf, double a, double b,
                          int resolution, const ClassifyOptions& opts = {});
SpectralMap scan_spectrum(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
                          double a, double b, int resolution,
                          const ClassifyOptions& opts = {});

struct InterlaceReport {
  int m = 0;  // rank of alpha J alpha_hat*
  bool count_bound_ok = true;     // <= m hat-eigenvalues per resolvent gap
  bool pigeonhole_ok = true;      // >= 1 hat-eigenvalue per n+1 consecutive
  bool scalar_strict_ok = true;   // n = 1, sin != 0: exactly one per gap
  bool scalar_case = false;
  bool inconclusive = false;
  std::vector<int> gap_counts;
  std::vector<double> eigs_alpha, eigs_alpha_hat;
};

/// Eigenvalue interlacing between two boundary conditions on a window of
/// pure discrete spectrum, from two independent scans.
InterlaceReport interlace_check(const SymplecticSystem& sys,
                                const BoundaryMatrix& alpha,
                                const BoundaryMatrix& alpha_hat, double a,
                                double b, int resolution,
                                const ClassifyOptions& opts = {});

}  // namespace symspec

#endif
