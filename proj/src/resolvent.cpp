#include "symspec/resolvent.hpp"

#include <cmath>

namespace symspec {

GreenKernel::GreenKernel(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
                         Complex lambda, Index n_top, double m_tol)
    : lambda_(lambda), n_top_(n_top) {
  x_la_ = weyl_columns(sys, alpha, lambda, n_top, m_tol);
  x_conj_ = weyl_columns(sys, alpha, std::conj(lambda), n_top, m_tol);
  m_plus_ = x_la_.m_implied;

  // The backward construction must agree with its conjugate partner; a
  // mismatch means the limit was not resolved at this lambda.
  const double sym =
      (x_conj_.m_implied - m_plus_.adjoint()).norm_fro();
  if (sym > 1e-6 * (1.0 + m_plus_.norm_fro()))
    throw NotConverged("green kernel: boundary function not resolved");

  FundamentalSolution f_la = fundamental(sys, alpha, lambda, n_top);
  FundamentalSolution f_conj = fundamental(sys, alpha, std::conj(lambda), n_top);
  zt_la_.k0 = 0;
  zt_la_.values = std::move(f_la.ztilde);
  zt_conj_.k0 = 0;
  zt_conj_.values = std::move(f_conj.ztilde);
}

Mat GreenKernel::eval(Index k, Index j) const {
  if (k < 0 || j < 0 || k > n_top_ || j > n_top_)
    throw BadInput("green kernel: index outside cached window");
  if (k <= j) return zt_la_.at(k) * x_conj_.x.at(j).adjoint();
  return x_la_.x.at(k) * zt_conj_.at(j).adjoint();
}

Mat green(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
          Complex lambda, Index k, Index j) {
  GreenKernel g(sys, alpha, lambda, std::max(k, j));
  return g.eval(k, j);
}

WeightedSequence resolve_bvp(const SymplecticSystem& sys,
                             const BoundaryMatrix& alpha, Complex lambda,
                             const WeightedSequence& f, const Mat& xi,
                             Index n_out) {
  if (xi.rows() != sys.n() || xi.cols() != 1)
    throw BadInput("resolve_bvp: xi must be an n-vector");
  for (const Mat& fk : f.values)
    if (fk.rows() != sys.dim() || fk.cols() != 1)
      throw BadInput("resolve_bvp: f entries must be 2n-vectors");

  const Index top = std::max(n_out, f.values.empty() ? Index(0) : f.last());
  GreenKernel g(sys, alpha, lambda, top);

  WeightedSequence z;
  z.k0 = 0;
  z.values.reserve(size_t(n_out) + 1);
  for (Index k = 0; k <= n_out; ++k) {
    Mat zk = g.weyl_at_lambda().at(k) * xi;
    for (Index j = f.k0; j <= f.last() && !f.values.empty(); ++j)
      zk += g.eval(k, j) * sys.psi(j) * f.at(j);
    z.values.push_back(zk);
  }
  return z;
}

double bvp_defect(const SymplecticSystem& sys, Complex lambda,
                  const WeightedSequence& z, const WeightedSequence& f) {
  const Mat j = sym_j(sys.n());
  double worst = 0.0;
  for (Index k = z.k0; k < z.last(); ++k) {
    Mat r = z.at(k) - transfer(sys, lambda, k, StepDirection::Backward) * z.at(k + 1);
    if (f.contains(k)) r += j * sys.psi(k) * f.at(k);
    worst = std::max(worst, r.norm_fro());
  }
  return worst;
}

}  // namespace symspec
