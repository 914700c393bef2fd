#ifndef SYMSPEC_PROPAGATE_HPP
#define SYMSPEC_PROPAGATE_HPP

#include <vector>

#include "symspec/core.hpp"

namespace symspec {

enum class StepDirection { Backward, Forward };

/// One-step coefficient: Backward returns T_k = S_k + lambda V_k (maps
/// z_{k+1} to z_k); Forward returns its inverse -J (S_k + conj(lambda) V_k)* J
/// computed from the symplectic structure, never by numeric inversion.
Mat transfer(const SymplecticSystem& sys, Complex lambda, Index k,
             StepDirection dir);

/// Streaming forward propagation of a 2n x m solution block. Overflow past
/// max_abs 1e200 raises OverflowError (no automatic rescaling by design).
class Propagator {
public:
  Propagator(const SymplecticSystem& sys, Complex lambda, Mat initial);

  const Mat& value() const { return z_; }
  Index index() const { return k_; }
  void step();                 // advance k -> k+1
  void advance_to(Index k_to); // repeated step() up to k_to

private:
  const SymplecticSystem* sys_;
  Complex lambda_;
  Mat z_;
  Index k_ = 0;
};

/// Matrix solutions Zhat (start alpha*) and Ztilde (start -J alpha*) stored
/// over k in [0, N].
struct FundamentalSolution {
  Complex lambda;
  BoundaryMatrix alpha;
  std::vector<Mat> zhat;    // 2n x n each
  std::vector<Mat> ztilde;  // 2n x n each
  Index n_top = 0;

  Mat phi(Index k) const { return Mat::hcat(zhat[size_t(k)], ztilde[size_t(k)]); }
};

FundamentalSolution fundamental(const SymplecticSystem& sys,
                                const BoundaryMatrix& alpha, Complex lambda,
                                Index n_top);

/// A 2n x m sequence over [k0, k0 + values.size()).
struct WeightedSequence {
  Index k0 = 0;
  std::vector<Mat> values;

  Index last() const { return k0 + Index(values.size()) - 1; }
  const Mat& at(Index k) const { return values[size_t(k - k0)]; }
  bool contains(Index k) const { return k >= k0 && k <= last(); }
};

struct SeminormResult {
  Mat gram;     // m x m Hermitian psd
  double norm;  // sqrt of trace
};

/// Gram matrix sum z_k* Psi_k z_k over the window [k1, k2].
SeminormResult seminorm(const SymplecticSystem& sys, const WeightedSequence& z,
                        Index k1, Index k2);

/// Per-step Gram increments ||z_k* Psi_k z_k|| over [k1, k2]; used by
/// tail-decay diagnostics.
std::vector<double> seminorm_increments(const SymplecticSystem& sys,
                                        const WeightedSequence& z, Index k1,
                                        Index k2);

/// Gram accumulated only while increments stay above the rounding floor:
/// accumulation stops once increments rebound well above their running
/// minimum (forward-propagated decaying solutions eventually drown in
/// amplified rounding noise) or fall below eps * total.
SeminormResult seminorm_clipped(const SymplecticSystem& sys,
                                const WeightedSequence& z, Index k1, Index k2,
                                Index* k_stop = nullptr);

/// Defect of the two-solution summation identity over [s, t]:
///   z_{t+1}* J u_{t+1} - z_s* J u_s
///     - sum_{k=s}^{t} { (conj(la) - nu) z* Psi u + f* Psi u - z* Psi g }.
/// Near zero when z solves the lambda/f system and u the nu/g system.
Mat lagrange_defect(const SymplecticSystem& sys, Complex lambda, Complex nu,
                    const WeightedSequence& z, const WeightedSequence& u,
                    const WeightedSequence& f, const WeightedSequence& g,
                    Index s, Index t);

/// Solve z_k = (S_k + lambda V_k) z_{k+1} - J Psi_k f_k forward from z_0;
/// f may be shorter than the window (treated as zero past its end).
WeightedSequence propagate_inhomogeneous(const SymplecticSystem& sys,
                                         Complex lambda, const Mat& z0,
                                         const WeightedSequence& f, Index n_top);

}  // namespace symspec

#endif
