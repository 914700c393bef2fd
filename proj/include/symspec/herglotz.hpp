#ifndef SYMSPEC_HERGLOTZ_HPP
#define SYMSPEC_HERGLOTZ_HPP

#include <vector>

#include "symspec/errors.hpp"
#include "symspec/matrix.hpp"

namespace symspec {

/// Right-continuous nondecreasing Hermitian step function: sorted
/// breakpoints with psd increments.
class StepSpectralFunction {
public:
  StepSpectralFunction() = default;
  StepSpectralFunction(int n, std::vector<double> breakpoints,
                       std::vector<Mat> increments, double tol = 1e-10);

  int n() const { return n_; }
  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<Mat>& increments() const { return incs_; }

  /// Value at t relative to -infinity: sum of increments with breakpoint <= t.
  Mat eval(double t) const;
  /// Jump at t (zero matrix when t is not a breakpoint).
  Mat jump_at(double t, double match_tol = 0.0) const;

private:
  int n_ = 0;
  std::vector<double> breaks_;
  std::vector<Mat> incs_;
};

/// Exact rational boundary-function model
///   M(la) = M0 + la*M1 + sum_j C_j (1/(t_j - la) - t_j/(1 + t_j^2))
/// optionally plus a scaled copy of the half-line free-lattice function
/// (semicircle density on [-2, 2]). Used as a synthetic oracle with
/// analytically known spectral data.
class HerglotzModel {
public:
  HerglotzModel() = default;
  HerglotzModel(Mat m0, Mat m1, StepSpectralFunction jumps,
                double semicircle_weight = 0.0);

  int n() const { return n_; }
  Mat eval(Complex lambda) const;
  const StepSpectralFunction& jumps() const { return jumps_; }
  double semicircle_weight() const { return semicircle_; }

private:
  int n_ = 1;
  Mat m0_, m1_;
  StepSpectralFunction jumps_;
  double semicircle_ = 0.0;
};

/// Evaluate the integral representation directly from its pieces.
Mat herglotz_eval(const StepSpectralFunction& tau, const Mat& m0, const Mat& m1,
                  Complex lambda);

/// Boundary function of the free Jacobi half-line operator with
/// Dirichlet-type boundary row: (-la + sqrt(la^2 - 4))/2 on the branch with
/// positive imaginary part in the upper half plane (Stieltjes transform of
/// the semicircle density sqrt(4 - t^2)/(2 pi) on [-2, 2]).
Complex free_jacobi_m(Complex lambda);

}  // namespace symspec

#endif
