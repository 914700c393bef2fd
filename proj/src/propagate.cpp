#include "symspec/propagate.hpp"

#include <cmath>

namespace symspec {

namespace {
constexpr double kOverflowGuard = 1e200;
}

Mat transfer(const SymplecticSystem& sys, Complex lambda, Index k,
             StepDirection dir) {
  const SystemCoeffs c = sys.coeffs(k);
  const Mat j = sym_j(sys.n());
  const Mat v = -(j * c.psi * c.s);
  if (dir == StepDirection::Backward) return c.s + v * lambda;
  // (S + la V)^{-1} = -J (S + conj(la) V)* J
  const Mat t_conj = c.s + v * std::conj(lambda);
  return -(j * t_conj.adjoint() * j);
}

Propagator::Propagator(const SymplecticSystem& sys, Complex lambda, Mat initial)
    : sys_(&sys), lambda_(lambda), z_(std::move(initial)) {
  if (z_.rows() != sys.dim()) throw BadInput("propagator: state shape");
}

void Propagator::step() {
  z_ = transfer(*sys_, lambda_, k_, StepDirection::Forward) * z_;
  ++k_;
  if (!(z_.max_abs() < kOverflowGuard)) throw OverflowError(k_);
}

void Propagator::advance_to(Index k_to) {
  while (k_ < k_to) step();
}

FundamentalSolution fundamental(const SymplecticSystem& sys,
                                const BoundaryMatrix& alpha, Complex lambda,
                                Index n_top) {
  if (alpha.n() != sys.n()) throw BadInput("fundamental: alpha dimension");
  FundamentalSolution f;
  f.lambda = lambda;
  f.alpha = alpha;
  f.n_top = n_top;
  const Mat astar = alpha.mat().adjoint();
  const Mat zt0 = -(sym_j(sys.n()) * astar);
  f.zhat.reserve(size_t(n_top) + 1);
  f.ztilde.reserve(size_t(n_top) + 1);
  Propagator p(sys, lambda, Mat::hcat(astar, zt0));
  const int n = sys.n();
  for (Index k = 0;; ++k) {
    f.zhat.push_back(p.value().block(0, 0, 2 * n, n));
    f.ztilde.push_back(p.value().block(0, n, 2 * n, n));
    if (k == n_top) break;
    p.step();
  }
  return f;
}

SeminormResult seminorm(const SymplecticSystem& sys, const WeightedSequence& z,
                        Index k1, Index k2) {
  if (!z.contains(k1) || (k2 >= k1 && !z.contains(k2)))
    throw BadInput("seminorm: window outside sequence");
  const int m = z.values.empty() ? 0 : z.values.front().cols();
  Mat gram(m, m);
  for (Index k = k1; k <= k2; ++k) {
    const Mat& zk = z.at(k);
    gram += zk.adjoint() * sys.psi(k) * zk;
  }
  gram = gram.hermitian_part();
  SeminormResult r{gram, std::sqrt(std::max(0.0, gram.trace().real()))};
  return r;
}

std::vector<double> seminorm_increments(const SymplecticSystem& sys,
                                        const WeightedSequence& z, Index k1,
                                        Index k2) {
  std::vector<double> inc;
  inc.reserve(size_t(k2 - k1 + 1));
  for (Index k = k1; k <= k2; ++k) {
    const Mat& zk = z.at(k);
    inc.push_back((zk.adjoint() * sys.psi(k) * zk).norm_fro());
  }
  return inc;
}

SeminormResult seminorm_clipped(const SymplecticSystem& sys,
                                const WeightedSequence& z, Index k1, Index k2,
                                Index* k_stop) {
  const int m = z.values.empty() ? 0 : z.values.front().cols();
  Mat gram(m, m);
  double min_inc = std::numeric_limits<double>::infinity();
  Index stop = k2;
  for (Index k = k1; k <= k2; ++k) {
    const Mat& zk = z.at(k);
    const Mat term = zk.adjoint() * sys.psi(k) * zk;
    const double inc = term.norm_fro();
    const double total = std::max(gram.norm_fro(), 1e-300);
    if (k > k1 + 8 && inc > 1e4 * min_inc && min_inc < 1e-8 * total) {
      stop = k - 1;  // rounding noise has taken over the tail
      break;
    }
    gram += term;
    min_inc = std::min(min_inc, std::max(inc, 1e-300));
    if (inc < 1e-18 * total) {
      stop = k;
      break;
    }
  }
  if (k_stop) *k_stop = stop;
  gram = gram.hermitian_part();
  return SeminormResult{gram, std::sqrt(std::max(0.0, gram.trace().real()))};
}

Mat lagrange_defect(const SymplecticSystem& sys, Complex lambda, Complex nu,
                    const WeightedSequence& z, const WeightedSequence& u,
                    const WeightedSequence& f, const WeightedSequence& g,
                    Index s, Index t) {
  if (!z.contains(s) || !z.contains(t + 1) || !u.contains(s) || !u.contains(t + 1))
    throw BadInput("lagrange_defect: window outside sequences");
  if (z.values.front().cols() != u.values.front().cols())
    throw BadInput("lagrange_defect: column mismatch");
  const Mat j = sym_j(sys.n());
  Mat boundary = z.at(t + 1).adjoint() * j * u.at(t + 1) -
                 z.at(s).adjoint() * j * u.at(s);
  Mat sum(boundary.rows(), boundary.cols());
  const Complex factor = std::conj(lambda) - nu;
  for (Index k = s; k <= t; ++k) {
    const Mat psi = sys.psi(k);
    sum += (z.at(k).adjoint() * psi * u.at(k)) * factor;
    if (f.contains(k)) sum += f.at(k).adjoint() * psi * u.at(k);
    if (g.contains(k)) sum -= z.at(k).adjoint() * psi * g.at(k);
  }
  return boundary - sum;
}

WeightedSequence propagate_inhomogeneous(const SymplecticSystem& sys,
                                         Complex lambda, const Mat& z0,
                                         const WeightedSequence& f, Index n_top) {
  WeightedSequence out;
  out.k0 = 0;
  out.values.reserve(size_t(n_top) + 1);
  const Mat j = sym_j(sys.n());
  Mat z = z0;
  for (Index k = 0; k < n_top; ++k) {
    out.values.push_back(z);
    Mat rhs = z;
    if (f.contains(k)) rhs += j * sys.psi(k) * f.at(k);
    z = transfer(sys, lambda, k, StepDirection::Forward) * rhs;
    if (!(z.max_abs() < kOverflowGuard)) throw OverflowError(k + 1);
  }
  out.values.push_back(z);
  return out;
}

}  // namespace symspec
