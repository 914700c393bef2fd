#include "symspec/herglotz.hpp"

#include <algorithm>
#include <cmath>

namespace symspec {

StepSpectralFunction::StepSpectralFunction(int n, std::vector<double> breakpoints,
                                           std::vector<Mat> increments, double tol)
    : n_(n), breaks_(std::move(breakpoints)), incs_(std::move(increments)) {
  if (breaks_.size() != incs_.size())
    throw BadInput("step function: breakpoints/increments size mismatch");
  if (!std::is_sorted(breaks_.begin(), breaks_.end()))
    throw BadInput("step function: breakpoints must be sorted");
  for (const Mat& c : incs_) {
    if (c.rows() != n_ || c.cols() != n_) throw BadInput("step function: increment shape");
    const double scale = std::max(1.0, c.norm_fro());
    if (c.herm_defect() > tol * scale)
      throw BadInput("step function: increment not Hermitian");
    if (min_eigenvalue(c.hermitian_part()) < -tol * scale)
      throw BadInput("step function: increment not psd");
  }
}

Mat StepSpectralFunction::eval(double t) const {
  Mat v(n_, n_);
  for (size_t i = 0; i < breaks_.size(); ++i)
    if (breaks_[i] <= t) v += incs_[i];
  return v;
}

Mat StepSpectralFunction::jump_at(double t, double match_tol) const {
  Mat v(n_, n_);
  for (size_t i = 0; i < breaks_.size(); ++i)
    if (std::abs(breaks_[i] - t) <= match_tol) v += incs_[i];
  return v;
}

HerglotzModel::HerglotzModel(Mat m0, Mat m1, StepSpectralFunction jumps,
                             double semicircle_weight)
    : n_(m0.rows()),
      m0_(std::move(m0)),
      m1_(std::move(m1)),
      jumps_(std::move(jumps)),
      semicircle_(semicircle_weight) {
  if (m0_.rows() != m0_.cols() || m1_.rows() != n_ || m1_.cols() != n_)
    throw BadInput("herglotz model: shape");
  if (jumps_.n() != n_) throw BadInput("herglotz model: jump dimension");
  if (m0_.herm_defect() > 1e-10 * std::max(1.0, m0_.norm_fro()))
    throw BadInput("herglotz model: M0 must be Hermitian");
  if (min_eigenvalue(m1_.hermitian_part()) < -1e-12 * std::max(1.0, m1_.norm_fro()))
    throw BadInput("herglotz model: M1 must be psd");
}

Mat HerglotzModel::eval(Complex lambda) const {
  Mat m = herglotz_eval(jumps_, m0_, m1_, lambda);
  if (semicircle_ != 0.0) {
    const Complex fm = semicircle_ * free_jacobi_m(lambda);
    for (int i = 0; i < n_; ++i) m(i, i) += fm;
  }
  return m;
}

Mat herglotz_eval(const StepSpectralFunction& tau, const Mat& m0, const Mat& m1,
                  Complex lambda) {
  if (lambda.imag() == 0.0) {
    for (double t : tau.breakpoints())
      if (t == lambda.real())
        throw PoleError("herglotz_eval: lambda at a breakpoint");
  }
  Mat m = m0 + m1 * lambda;
  const auto& bp = tau.breakpoints();
  const auto& inc = tau.increments();
  for (size_t i = 0; i < bp.size(); ++i) {
    const double t = bp[i];
    const Complex coef = 1.0 / (t - lambda) - t / (1.0 + t * t);
    m += inc[i] * coef;
  }
  return m;
}

Complex free_jacobi_m(Complex lambda) {
  // m = -zeta with zeta the root of zeta^2 - lambda zeta + 1 = 0 inside the
  // unit circle; on the cut [-2, 2] take the limit from the upper half plane.
  if (lambda.imag() == 0.0 && std::abs(lambda.real()) <= 2.0) {
    const double x = lambda.real();
    return {-x / 2.0, std::sqrt(4.0 - x * x) / 2.0};
  }
  const Complex disc = std::sqrt(lambda * lambda - 4.0);
  const Complex s =
      (std::real(std::conj(lambda) * disc) >= 0.0) ? disc : -disc;
  const Complex zeta_big = (lambda + s) * 0.5;  // |zeta_big| > 1
  return -1.0 / zeta_big;
}

}  // namespace symspec
