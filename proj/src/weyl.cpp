#include "symspec/weyl.hpp"

#include <cmath>
#include <limits>

namespace symspec {

namespace {

constexpr double kSingularCond = 1e13;

/// M at index k from the current fundamental block, or nullopt if
/// beta Ztilde is numerically singular.
bool m_from_phi(const Mat& phi, const BoundaryMatrix& beta, int n, Mat* out) {
  const Mat zh = phi.block(0, 0, 2 * n, n);
  const Mat zt = phi.block(0, n, 2 * n, n);
  const Mat bzt = beta.mat() * zt;
  if (cond_estimate(bzt) > kSingularCond) return false;
  *out = -solve(bzt, beta.mat() * zh);
  return true;
}

Mat initial_phi(const BoundaryMatrix& alpha) {
  const Mat astar = alpha.mat().adjoint();
  return Mat::hcat(astar, -(sym_j(alpha.n()) * astar));
}

double pairwise_spread(const std::vector<Mat>& ms) {
  double s = 0.0;
  for (size_t i = 0; i < ms.size(); ++i)
    for (size_t j = i + 1; j < ms.size(); ++j)
      s = std::max(s, (ms[i] - ms[j]).norm_fro());
  return s;
}

}  // namespace

Mat regular_m(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
              const BoundaryMatrix& beta, Complex lambda, Index n_top) {
  Propagator p(sys, lambda, initial_phi(alpha));
  p.advance_to(n_top);
  Mat m;
  if (!m_from_phi(p.value(), beta, sys.n(), &m))
    throw SingularBoundary(lambda, n_top);
  return m;
}

double on_circle_residual(const SymplecticSystem& sys,
                          const BoundaryMatrix& alpha, Complex lambda,
                          Index n_top, const Mat& m) {
  const int n = sys.n();
  const Mat astar = alpha.mat().adjoint();
  Mat x = astar - sym_j(n) * astar * m;  // X_0 = Zhat_0 + Ztilde_0 M
  Propagator p(sys, lambda, x);
  Mat gram(n, n);
  double min_inc = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < n_top; ++k) {
    const Mat term = p.value().adjoint() * sys.psi(k) * p.value();
    const double inc = term.norm_fro();
    const double total = std::max(gram.norm_fro(), 1e-300);
    if (k > 8 && inc > 1e4 * min_inc && min_inc < 1e-8 * total) break;
    gram += term;
    min_inc = std::min(min_inc, std::max(inc, 1e-300));
    p.step();
  }
  const Mat lhs = m - m.adjoint();
  const Mat rhs = gram * (lambda - std::conj(lambda));
  return (lhs - rhs).norm_fro();
}

std::vector<BoundaryMatrix> default_beta_probes(const BoundaryMatrix& alpha,
                                                std::uint64_t seed) {
  const int n = alpha.n();
  std::vector<BoundaryMatrix> probes;
  if (n == 1) {
    const double pi = 3.14159265358979323846;
    probes.push_back(BoundaryMatrix::from_angle(0.0));
    probes.push_back(BoundaryMatrix::from_angle(pi / 4.0));
    probes.push_back(BoundaryMatrix::from_angle(pi / 2.0));
    return probes;
  }
  probes.push_back(alpha);
  probes.emplace_back(alpha.mat() * sym_j(n));  // alpha J is again in Gamma
  Rng rng(seed);
  probes.push_back(random_boundary(n, rng));
  return probes;
}

MPlusEvaluation limit_m(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
                        Complex lambda, const LimitMOptions& opts) {
  const int n = sys.n();
  std::vector<BoundaryMatrix> probes =
      opts.beta_probes.empty() ? default_beta_probes(alpha, opts.probe_seed)
                               : opts.beta_probes;

  MPlusEvaluation ev;
  ev.lambda = lambda;

  Propagator p(sys, lambda, initial_phi(alpha));
  bool capped = false;
  Mat prev_value;
  bool have_prev = false;

  Index n_target = opts.n_min;
  while (true) {
    try {
      p.advance_to(n_target);
    } catch (const OverflowError&) {
      capped = true;
    }

    // At a finite-section eigenvalue a probe row can go singular; step a few
    // indices further rather than giving up.
    std::vector<Mat> ms;
    Index retries = 0;
    while (true) {
      ms.clear();
      Mat m;
      for (const auto& beta : probes)
        if (m_from_phi(p.value(), beta, n, &m)) ms.push_back(m);
      if (ms.size() >= 2 || capped) break;
      if (++retries > 8)
        throw DegenerateSystem("limit_m: all boundary probes stay singular");
      try {
        p.step();
      } catch (const OverflowError&) {
        capped = true;
      }
    }
    if (ms.empty()) {
      // Overflow before any usable value at this window.
      ev.converged = false;
      ev.n_used = p.index();
      if (ev.value.empty()) ev.value = Mat(n, n);
      return ev;
    }

    Mat mean(n, n);
    for (const auto& m : ms) mean += m;
    mean *= Complex(1.0 / double(ms.size()));
    const double spread = pairwise_spread(ms);

    ev.n_history.push_back(p.index());
    ev.spread_history.push_back(spread);
    ev.n_used = p.index();
    ev.diameter = spread;

    const double step_change =
        have_prev ? (mean - prev_value).norm_fro()
                  : std::numeric_limits<double>::infinity();
    ev.value = mean;
    if (spread < opts.tol && step_change < opts.tol) {
      ev.converged = true;
      break;
    }
    prev_value = mean;
    have_prev = true;

    if (capped || 2 * n_target > opts.n_max) {
      ev.converged = false;
      break;
    }
    n_target = 2 * n_target;
  }

  if (opts.circle_residual && ev.n_used <= (Index(1) << 16) && !ev.value.empty())
    ev.on_circle = on_circle_residual(sys, alpha, lambda, ev.n_used, ev.value);
  return ev;
}

WeightedSequence weyl_solution(const FundamentalSolution& fund, const Mat& m) {
  if (!fund.zhat.empty() && fund.zhat.front().cols() != m.rows())
    throw BadInput("weyl_solution: shape mismatch");
  WeightedSequence x;
  x.k0 = 0;
  x.values.reserve(fund.zhat.size());
  for (size_t k = 0; k < fund.zhat.size(); ++k)
    x.values.push_back(fund.zhat[k] + fund.ztilde[k] * m);
  return x;
}

WeylColumns weyl_columns(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
                         Complex lambda, Index n_top, double tol) {
  const int n = sys.n();
  const int d = 2 * n;
  Index margin = std::max<Index>(64, n_top / 2);
  Mat prev_m;
  bool have_prev = false;

  for (int attempt = 0; attempt < 12; ++attempt) {
    const Index k_start = n_top + margin;

    // Purification phase: backward from k_start to n_top. Overall scale is
    // irrelevant (fixed by the boundary row at 0), so rescale freely.
    Mat w(d, n);
    for (int i = 0; i < n; ++i) {
      w(i, i) = 1.0;
      w(n + i, i) = Complex(0.0, 1.0);
    }
    for (Index k = k_start - 1; k >= n_top; --k) {
      w = transfer(sys, lambda, k, StepDirection::Backward) * w;
      const double m_abs = w.max_abs();
      if (m_abs > 1e120 || (m_abs > 0 && m_abs < 1e-120))
        w *= Complex(1.0 / m_abs);
    }

    // Window phase: one common scale across the chain so the k-profile is
    // meaningful; when the head threatens to overflow, rescale everything
    // stored so far by the same factor.
    std::vector<Mat> chain(size_t(n_top) + 1);
    chain[size_t(n_top)] = w;
    for (Index k = n_top - 1; k >= 0; --k) {
      chain[size_t(k)] =
          transfer(sys, lambda, k, StepDirection::Backward) * chain[size_t(k + 1)];
      const double m_abs = chain[size_t(k)].max_abs();
      if (m_abs > 1e220) {
        const Complex f(1.0 / m_abs);
        for (Index kk = k; kk <= n_top; ++kk) chain[size_t(kk)] *= f;
      }
    }

    const Mat aw0 = alpha.mat() * chain[0];
    if (cond_estimate(aw0) > 1e12) {
      margin *= 2;
      continue;
    }
    const Mat norm = inverse(aw0);
    WeylColumns out;
    out.x.k0 = 0;
    out.x.values.reserve(chain.size());
    for (const Mat& c : chain) out.x.values.push_back(c * norm);
    out.m_implied = alpha.mat() * sym_j(n) * out.x.values[0];

    if (have_prev &&
        (out.m_implied - prev_m).norm_fro() <
            tol * std::max(1.0, prev_m.norm_fro()))
      return out;
    prev_m = out.m_implied;
    have_prev = true;
    margin *= 2;
    if (margin > (Index(1) << 15)) return out;
  }
  throw PropagationError("weyl_columns: backward purification failed");
}

namespace {

/// Dyadic tail-decay test per the summability heuristic: the last three
/// dyadic increments must halve successively and the final one must be
/// negligible against the total.
bool column_summable(const std::vector<double>& inc, double tol) {
  const size_t n = inc.size();
  if (n < 8) return false;
  double total = 0.0;
  for (double v : inc) total += v;
  auto window_sum = [&](size_t a, size_t b) {  // [a, b)
    double s = 0.0;
    for (size_t k = a; k < b; ++k) s += inc[k];
    return s;
  };
  const double w1 = window_sum(n / 8, n / 4);
  const double w2 = window_sum(n / 4, n / 2);
  const double w3 = window_sum(n / 2, n);
  const double floor = 1e-14 * (1.0 + total);
  const bool ratio_ok = (w1 >= 2.0 * w2 || w2 <= floor) &&
                        (w2 >= 2.0 * w3 || w3 <= floor);
  return ratio_ok && w3 < tol * (1.0 + total);
}

}  // namespace

LimitPointReport diagnose_limit_point(const SymplecticSystem& sys,
                                      const std::vector<Complex>& probes,
                                      Index window, double tol) {
  const int n = sys.n();
  const BoundaryMatrix alpha =
      n == 1 ? BoundaryMatrix::from_angle(3.14159265358979323846 / 2.0)
             : [&] {
                 Mat a(n, 2 * n);
                 for (int i = 0; i < n; ++i) a(i, i) = 1.0;
                 return BoundaryMatrix(a);
               }();

  LimitPointReport rep;
  std::vector<WeightedSequence> weyl_per_probe;
  bool all_exact = true;
  double psi_mass = 0.0;
  for (Index k = 0; k <= std::min<Index>(window, 64); ++k)
    psi_mass += sys.psi(k).norm_fro();
  if (psi_mass == 0.0) {
    rep.verdict = LimitPointVerdict::Inconclusive;  // weight degenerate
    for (Complex la : probes) rep.probes.push_back({la, 2 * n, 0.0});
    return rep;
  }

  for (Complex la : probes) {
    if (la.imag() == 0.0) throw BadInput("diagnose_limit_point: real probe");
    LimitPointProbe pr;
    pr.lambda = la;

    WeylColumns wc = weyl_columns(sys, alpha, la, window);
    weyl_per_probe.push_back(wc.x);

    FundamentalSolution fund;
    Index reach = window;
    try {
      fund = fundamental(sys, alpha, la, window);
    } catch (const OverflowError& e) {
      reach = std::max<Index>(e.index - 1, 8);
      fund = fundamental(sys, alpha, la, reach);
    }

    int summable = 0;
    for (int c = 0; c < n; ++c) {
      WeightedSequence col;
      col.k0 = 0;
      for (const Mat& v : wc.x.values) col.values.push_back(v.block(0, c, 2 * n, 1));
      if (column_summable(seminorm_increments(sys, col, 0, window), tol)) ++summable;
    }
    for (int c = 0; c < n; ++c) {
      WeightedSequence col;
      col.k0 = 0;
      for (const Mat& v : fund.ztilde) col.values.push_back(v.block(0, c, 2 * n, 1));
      if (column_summable(seminorm_increments(sys, col, 0, reach), tol)) ++summable;
    }
    pr.summable = summable;
    if (summable != n) all_exact = false;
    rep.probes.push_back(pr);
  }

  // Cross products of summable solutions at the far end of the window.
  const Mat j = sym_j(n);
  double cross_max = 0.0;
  for (size_t i = 0; i < weyl_per_probe.size(); ++i)
    for (size_t jj = i; jj < weyl_per_probe.size(); ++jj) {
      const Mat& xi = weyl_per_probe[i].values.back();
      const Mat& xj = weyl_per_probe[jj].values.back();
      cross_max = std::max(cross_max, (xi.adjoint() * j * xj).norm_fro());
    }
  for (auto& pr : rep.probes) pr.cross_wronskian = cross_max;

  rep.verdict = (all_exact && cross_max < tol) ? LimitPointVerdict::LimitPoint
                                               : LimitPointVerdict::Inconclusive;
  return rep;
}

}  // namespace symspec
