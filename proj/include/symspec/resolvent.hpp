#ifndef SYMSPEC_RESOLVENT_HPP
#define SYMSPEC_RESOLVENT_HPP

#include "symspec/weyl.hpp"

namespace symspec {

/// Two-sided resolvent kernel
///   G_kj = Ztilde_k(la) X^+_j(conj la)^*   for k <= j,
///   G_kj = X^+_k(la) Ztilde_j(conj la)^*   for k >= j+1,
/// with all four column families cached up to the largest requested index.
/// Immutable after construction; concurrent reads are safe.
class GreenKernel {
public:
  GreenKernel(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
              Complex lambda, Index n_top, double m_tol = 1e-9);

  Complex lambda() const { return lambda_; }
  Index n_top() const { return n_top_; }
  const Mat& m_plus() const { return m_plus_; }

  Mat eval(Index k, Index j) const;

  const WeightedSequence& weyl_at_lambda() const { return x_la_.x; }
  const WeightedSequence& ztilde_at_lambda() const { return zt_la_; }

private:
  Complex lambda_;
  Index n_top_;
  Mat m_plus_;
  WeylColumns x_la_, x_conj_;
  WeightedSequence zt_la_, zt_conj_;
};

/// One kernel block without keeping the kernel object around.
Mat green(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
          Complex lambda, Index k, Index j);

/// Solution of the boundary value problem
///   z_k = (S_k + la V_k) z_{k+1} - J Psi_k f_k,  alpha z_0 = xi
/// as z = X^+ xi + sum_j G_.j Psi_j f_j over [0, n_out].
WeightedSequence resolve_bvp(const SymplecticSystem& sys,
                             const BoundaryMatrix& alpha, Complex lambda,
                             const WeightedSequence& f, const Mat& xi,
                             Index n_out);

/// Max over the window of || z_k - (S+laV) z_{k+1} + J Psi_k f_k ||.
double bvp_defect(const SymplecticSystem& sys, Complex lambda,
                  const WeightedSequence& z, const WeightedSequence& f);

}  // namespace symspec

#endif
