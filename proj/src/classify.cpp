#include "symspec/classify.hpp"

#include "symspec/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace symspec {

std::string to_string(SpectrumVerdict v) {
  switch (v) {
    case SpectrumVerdict::Resolvent: return "Resolvent";
    case SpectrumVerdict::DiscreteEigenvalue: return "DiscreteEigenvalue";
    case SpectrumVerdict::PointContinuous: return "PointContinuous";
    case SpectrumVerdict::Continuous: return "Continuous";
    case SpectrumVerdict::Undetermined: return "Undetermined";
  }
  return "?";
}

std::vector<double> NuSchedule::nodes() const {
  if (!(nu0 > 0.0) || !(ratio > 0.0) || !(ratio < 1.0) || count < 2)
    throw BadInput("nu schedule: need nu0 > 0, 0 < ratio < 1, count >= 2");
  std::vector<double> out(static_cast<size_t>(count));
  double nu = nu0;
  for (int j = 0; j < count; ++j) {
    out[size_t(j)] = nu;
    nu *= ratio;
  }
  if (out.back() < 1e-8)
    throw BadInput("nu schedule: floor below the 1e-8 underflow guard");
  return out;
}

Extrapolation richardson(const std::vector<Mat>& samples, double ratio,
                         int max_depth) {
  if (samples.empty()) throw BadInput("richardson: no samples");
  Extrapolation out;
  const int k = int(samples.size());

  // Divergence sniffing: sustained growth along the schedule.
  if (k >= 4) {
    int rising = 0;
    for (int j = k - 3; j < k; ++j)
      if (samples[size_t(j)].norm_fro() >
          1.4 * samples[size_t(j - 1)].norm_fro() + 1e-300)
        ++rising;
    out.diverging = (rising == 3);
  }

  std::vector<std::vector<Mat>> t(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) {
    t[size_t(j)].push_back(samples[size_t(j)]);
    const int depth = std::min(j, max_depth);
    for (int m = 1; m <= depth; ++m) {
      const double rm = std::pow(ratio, m);
      const Mat& high = t[size_t(j)][size_t(m - 1)];
      const Mat& low = t[size_t(j - 1)][size_t(m - 1)];
      t[size_t(j)].push_back((high - low * Complex(rm)) * Complex(1.0 / (1.0 - rm)));
    }
  }

  if (k == 1) {
    out.value = samples[0];
    out.residual = samples[0].norm_fro();
    out.nodes_used = 1;
    return out;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int j = 1; j < k; ++j) {
    const Mat& dj = t[size_t(j)].back();
    const Mat& dp = t[size_t(j - 1)].back();
    const double change = (dj - dp).norm_fro();
    if (change <= best) {
      best = change;
      out.value = dj;
      out.residual = change;
      out.nodes_used = j + 1;
    }
  }
  return out;
}

BoundaryLimitResult boundary_limit(const MFunction& mf, double lambda0,
                                   const NuSchedule& sched) {
  const std::vector<double> nus = sched.nodes();
  std::vector<Mat> f;
  std::vector<double> used;
  for (double nu : nus) {
    const MFunction::Eval ev = mf.eval({lambda0, nu});
    if (!ev.converged) break;
    f.push_back(ev.value * Complex(nu));
    used.push_back(nu);
  }
  if (f.size() < 3)
    throw NotConverged("boundary_limit: too few usable schedule nodes");
  const Extrapolation ex = richardson(f, sched.ratio);
  return BoundaryLimitResult{ex.value, ex.residual, used};
}

LaurentResult laurent_coeffs(const MFunction& mf, double center, double radius,
                             int q, double herm_tol) {
  if (q < 8) throw BadInput("laurent_coeffs: too few nodes");
  const int n = mf.n();
  // K_m = (1/Q) sum_q M(c + w_q) rho^{-m} e^{-i m theta_q}, w_q = rho e^{i theta_q};
  // the extra w^2 moment recenters the contour on the pole.
  Mat k_m1(n, n), k_0(n, n), k_1(n, n), first(n, n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < q; ++i) {
    // Half-offset trapezoid nodes keep the contour off the real axis.
    const double th = 2.0 * pi * (double(i) + 0.5) / double(q);
    const Complex w = std::polar(radius, th);
    const MFunction::Eval ev = mf.eval(Complex(center, 0.0) + w);
    if (!ev.converged)
      throw NotConverged("laurent_coeffs: contour node did not converge");
    const Complex inv_q(1.0 / double(q));
    k_m1 += ev.value * (w * inv_q);
    k_0 += ev.value * inv_q;
    k_1 += ev.value * (inv_q / w);
    first += ev.value * (w * w * inv_q);
  }
  LaurentResult out;
  out.herm_defect = k_m1.herm_defect();
  const double scale = std::max(1.0, k_m1.norm_fro());
  if (out.herm_defect > herm_tol * scale)
    throw NotIsolated("laurent_coeffs: residue not Hermitian");
  out.k_minus1 = k_m1.hermitian_part();
  out.k0 = k_0;
  out.k1 = k_1;
  const Complex tr = k_m1.trace();
  if (std::abs(tr) > 1e-12)
    out.refined_center = center + (first.trace() / tr).real();
  else
    out.refined_center = center;
  return out;
}

Mat tau_increment(const MFunction& mf, double l1, double l2, double nu,
                  double quad_tol) {
  if (!(l1 < l2)) throw BadInput("tau_increment: need l1 < l2");
  if (!(nu > 0.0)) throw BadInput("tau_increment: need nu > 0");
  const double pi = 3.14159265358979323846;

  auto integrand = [&](double t, double v) {
    const MFunction::Eval ev = mf.eval({t, v});
    if (!ev.converged)
      throw NotConverged("tau_increment: quadrature node did not converge");
    return ev.value.imag_part_herm();
  };

  // Adaptive Simpson on the matrix integrand.
  std::function<Mat(double, double, double, const Mat&, const Mat&, const Mat&,
                    const Mat&, double, int)>
      simpson = [&](double a, double b, double v, const Mat& fa, const Mat& fm,
                    const Mat& fb, const Mat& whole, double tol, int depth) -> Mat {
    const double m = 0.5 * (a + b);
    const Mat fl = integrand(0.5 * (a + m), v);
    const Mat fr = integrand(0.5 * (m + b), v);
    const Mat left = (fa + fl * 4.0 + fm) * Complex((m - a) / 6.0);
    const Mat right = (fm + fr * 4.0 + fb) * Complex((b - m) / 6.0);
    const Mat sum = left + right;
    if (depth > 24) return sum;
    if (depth > 3 && (sum - whole).norm_fro() < 15.0 * tol)
      return sum + (sum - whole) * Complex(1.0 / 15.0);
    return simpson(a, m, v, fa, fl, fm, left, tol * 0.5, depth + 1) +
           simpson(m, b, v, fm, fr, fb, right, tol * 0.5, depth + 1);
  };

  auto integral = [&](double v) {
    const Mat fa = integrand(l1, v);
    const Mat fb = integrand(l2, v);
    const Mat fm = integrand(0.5 * (l1 + l2), v);
    const Mat whole = (fa + fm * 4.0 + fb) * Complex((l2 - l1) / 6.0);
    return simpson(l1, l2, v, fa, fm, fb, whole,
                   quad_tol * std::max(1.0, l2 - l1), 0) *
           Complex(1.0 / pi);
  };

  // Three-node extrapolation in nu kills the linear and quadratic boundary
  // layers of the smeared density.
  const Mat i0 = integral(nu);
  const Mat i1 = integral(nu * 0.5);
  const Mat i2 = integral(nu * 0.25);
  const Mat t11 = i1 * 2.0 - i0;
  const Mat t21 = i2 * 2.0 - i1;
  const Mat t22 = (t21 * 4.0 - t11) * Complex(1.0 / 3.0);
  return t22.hermitian_part();
}

namespace {

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  int iters) {
  const double gr = 0.61803398874989484820;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

/// Peak of f on [lo, hi]. The magnitude near a pole is a narrow spike on a
/// structured background (including a near-zero dip beside it), so seed the
/// golden search from a coarse sample instead of trusting unimodality.
double find_peak(const std::function<double(double)>& f, double lo, double hi) {
  const int coarse = 32;
  const double h = (hi - lo) / coarse;
  double best_x = lo;
  double best_f = -1.0;
  for (int i = 0; i <= coarse; ++i) {
    const double x = lo + h * i;
    const double v = f(x);
    if (v > best_f) {
      best_f = v;
      best_x = x;
    }
  }
  return golden_max(f, std::max(lo, best_x - h), std::min(hi, best_x + h), 40);
}

void run_parallel(int count, const std::function<void(int)>& work) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw < 2 || count < 4) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  hw = std::min(hw, unsigned(count));
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(hw);
  std::vector<std::thread> pool;
  pool.reserve(hw);
  for (unsigned t = 0; t < hw; ++t) {
    pool.emplace_back([&, t] {
      try {
        int i;
        while ((i = next.fetch_add(1)) < count) work(i);
      } catch (...) {
        errors[t] = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

ClassificationRecord classify_point(const MFunction& mf, double lambda0,
                                    const ClassifyOptions& opts) {
  ClassificationRecord rec;
  rec.lambda0 = lambda0;
  rec.refined_lambda = lambda0;

  const std::vector<double> nus = opts.sched.nodes();
  std::vector<Mat> f_limit, f_density;
  Extrapolation ex_l, ex_d;
  double m0_norm = 0.0;

  for (size_t j = 0; j < nus.size(); ++j) {
    const double nu = nus[j];
    const MFunction::Eval ev = mf.eval({lambda0, nu});
    if (!ev.converged) break;
    if (j == 0) m0_norm = ev.value.norm_fro();
    f_limit.push_back(ev.value * Complex(nu));
    f_density.push_back(ev.value.imag_part_herm());
    rec.nu_used.push_back(nu);
    if (j >= 5) {
      ex_l = richardson(f_limit, opts.sched.ratio);
      ex_d = richardson(f_density, opts.sched.ratio);
      const bool l_ok = ex_l.residual < 1e-7 * (1.0 + m0_norm);
      const bool d_ok =
          ex_d.diverging || ex_d.residual < 1e-6 * (1.0 + ex_d.value.norm_fro());
      if (l_ok && d_ok) break;
    }
  }
  if (f_limit.size() < 4) {
    rec.verdict = SpectrumVerdict::Undetermined;
    return rec;
  }
  ex_l = richardson(f_limit, opts.sched.ratio);
  ex_d = richardson(f_density, opts.sched.ratio);

  rec.eps_l = 1e-4 * (1.0 + m0_norm);
  rec.l_hat = ex_l.value;
  rec.l_residual = ex_l.residual;
  rec.density_divergent = ex_d.diverging;
  rec.density_residual = ex_d.residual;
  if (!ex_d.diverging) rec.density = ex_d.value.hermitian_part();
  rec.pole_candidate = rec.l_hat.norm_fro() > rec.eps_l;

  if (rec.pole_candidate || opts.force_pole_test) {
    if (!opts.refine_pole) {
      rec.verdict = SpectrumVerdict::Undetermined;
      return rec;
    }
    // Locate the singular point precisely, then read the residue off a
    // small contour (recentred once on the first contour moment).
    const double nu_ref = std::max(1e-3, nus.back());
    const double bracket =
        opts.peak_bracket > 0.0 ? opts.peak_bracket : opts.grid_step;
    auto score = [&](double t) { return mf.eval({t, nu_ref}).value.norm_fro(); };
    const double t_peak = find_peak(score, lambda0 - bracket, lambda0 + bracket);
    const double rho =
        std::min(opts.contour_radius, 0.45 * opts.neighbor_gap);
    try {
      LaurentResult lc = laurent_coeffs(mf, t_peak, rho);
      double center = lc.refined_center;
      if (std::abs(center - t_peak) > 0.5 * rho) center = t_peak;
      lc = laurent_coeffs(mf, center, rho);
      rec.refined_lambda = lc.refined_center;
      rec.k_minus1 = lc.k_minus1;
    } catch (const NotIsolated&) {
      rec.k_minus1.reset();
    } catch (const NotConverged&) {
      rec.k_minus1.reset();
    }

    const double kappa_floor = std::max(1e-7 * (1.0 + m0_norm), 0.1 * rec.eps_l);
    const bool contour_mass =
        rec.k_minus1 && rec.k_minus1->norm_fro() > kappa_floor;
    if (!contour_mass) {
      rec.refined_lambda = lambda0;
      if (rec.pole_candidate) {
        // The limit showed mass but the contour cannot find it.
        rec.verdict = SpectrumVerdict::Undetermined;
        return rec;
      }
      rec.k_minus1.reset();  // forced probe found nothing; fall through
    } else {
      // Isolation test on punctured flanks.
      double delta = std::min(10.0 * opts.grid_step, 0.45 * opts.neighbor_gap);
      double dprime = opts.grid_step;
      if (delta <= 2.0 * dprime) dprime = 0.25 * delta;
      const double ls = rec.refined_lambda;
      const double nu_fl = std::min(opts.tau_nu, dprime / 25.0);
      try {
        rec.flank_low =
            tau_increment(mf, ls - delta, ls - dprime, nu_fl, opts.eps_tau / 100.0)
                .norm_fro();
        rec.flank_high =
            tau_increment(mf, ls + dprime, ls + delta, nu_fl, opts.eps_tau / 100.0)
                .norm_fro();
      } catch (const NotConverged&) {
        rec.verdict = SpectrumVerdict::Undetermined;
        return rec;
      }

      const bool quiet =
          rec.flank_low < opts.eps_tau && rec.flank_high < opts.eps_tau;
      const bool active = rec.flank_low >= 10.0 * opts.eps_tau ||
                          rec.flank_high >= 10.0 * opts.eps_tau;
      if (quiet) {
        // Residue sanity: Hermitian (checked) and nonpositive.
        const Mat& km = *rec.k_minus1;
        if (hermitian_eigenvalues(km).back() > 1e-6 * (1.0 + km.norm_fro())) {
          rec.verdict = SpectrumVerdict::Undetermined;
          return rec;
        }
        rec.verdict = SpectrumVerdict::DiscreteEigenvalue;
        return rec;
      }
      if (active) {
        rec.verdict = SpectrumVerdict::PointContinuous;
        rec.k_minus1.reset();
        return rec;
      }
      rec.verdict = SpectrumVerdict::Undetermined;
      return rec;
    }
  }

  // No boundary mass at lambda0: resolvent vs continuous by the density.
  if (ex_d.diverging) {
    rec.verdict = SpectrumVerdict::Continuous;
    return rec;
  }
  const Mat dens = ex_d.value.hermitian_part();
  const double dn_front = f_density.front().norm_fro();
  const double dn_back = f_density.back().norm_fro();
  if (dens.norm_fro() < opts.eps_im) {
    const bool decaying = dn_back < 0.5 * dn_front + 1e-12;
    rec.verdict =
        decaying ? SpectrumVerdict::Resolvent : SpectrumVerdict::Undetermined;
    return rec;
  }
  const double min_eig = min_eigenvalue(dens);
  if (min_eig > -10.0 * ex_d.residual - 1e-8) {
    rec.verdict = SpectrumVerdict::Continuous;
    return rec;
  }
  rec.verdict = SpectrumVerdict::Undetermined;
  return rec;
}

ClassificationRecord classify_point(const SymplecticSystem& sys,
                                    const BoundaryMatrix& alpha, double lambda0,
                                    const ClassifyOptions& opts) {
  SystemMFunction mf(sys, alpha);
  return classify_point(mf, lambda0, opts);
}

EigenData eigen_data(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
                     double lambda_star, const Mat& k_minus1, Index window,
                     double tol) {
  EigenData out;
  out.k_minus1 = k_minus1;
  if (k_minus1.norm_fro() < 1e-12)
    throw InconsistentResidue("eigen_data: zero residue gives a zero eigenfunction");

  FundamentalSolution fund;
  try {
    fund = fundamental(sys, alpha, Complex(lambda_star, 0.0), window);
  } catch (const OverflowError& e) {
    fund = fundamental(sys, alpha, Complex(lambda_star, 0.0),
                       std::max<Index>(e.index - 1, 8));
  }

  out.eigenfunction.k0 = 0;
  for (const Mat& zt : fund.ztilde)
    out.eigenfunction.values.push_back(zt * k_minus1);
  out.boundary_residual =
      (alpha.mat() * out.eigenfunction.values.front()).norm_fro();

  const SeminormResult sr = seminorm_clipped(sys, out.eigenfunction, 0,
                                             out.eigenfunction.last());
  out.gram = sr.gram;
  out.gram_vs_residue = (out.gram + k_minus1).norm_fro();
  if (out.gram_vs_residue > 100.0 * tol * (1.0 + k_minus1.norm_fro()))
    throw InconsistentResidue("eigen_data: Gram does not match the residue");
  return out;
}

Mat transform_alpha(const Mat& m_hat, const BoundaryMatrix& alpha,
                    const BoundaryMatrix& alpha_hat, double tol) {
  const int n = alpha.n();
  if (alpha_hat.n() != n || m_hat.rows() != n || m_hat.cols() != n)
    throw BadInput("transform_alpha: dimension mismatch");
  const Mat a = alpha.mat() * alpha_hat.mat().adjoint();
  const Mat b = alpha.mat() * sym_j(n) * alpha_hat.mat().adjoint();
  const Mat bracket = a - b * m_hat;
  if (cond_estimate(bracket) > 1.0 / tol)
    throw PoleOfTransform("transform_alpha: singular bracket (spectral point)");
  return solve(bracket.transpose(), (b + a * m_hat).transpose()).transpose();
}

SpectralMap scan_spectrum(const MFunction& mf, double a, double b,
                          int resolution, const ClassifyOptions& opts) {
  if (!(a < b) || resolution < 2) throw BadInput("scan_spectrum: bad window");
  SpectralMap map;
  map.a = a;
  map.b = b;
  map.resolution = resolution;
  map.records.resize(size_t(resolution));

  const double step = (b - a) / double(resolution - 1);
  ClassifyOptions grid_opts = opts;
  grid_opts.grid_step = step;
  grid_opts.refine_pole = false;

  run_parallel(resolution, [&](int i) {
    const double t = a + step * i;
    map.records[size_t(i)] = classify_point(mf, t, grid_opts);
  });

  // Candidate positions come from three detectors:
  //  - grid records whose extrapolated boundary limit already shows mass;
  //  - magnitude growth under shrinking smearing (a pole between grid points
  //    hides its mass from the extrapolated limit at both neighbors, but
  //    ||M(t + i nu)|| still blows up as nu drops);
  //  - for half-line-backed data, sign changes of the far-window section
  //    determinant on cells that are not continuous spectrum.
  struct Candidate {
    double pos;
    bool from_root;
  };
  std::vector<Candidate> cands;
  {
    std::vector<double> score(size_t(resolution), 0.0);
    const double nu0 = opts.sched.nu0;
    const double nu2 = nu0 * opts.sched.ratio * opts.sched.ratio;
    for (int i = 0; i < resolution; ++i) {
      const double t = a + step * i;
      const double m0 = mf.eval({t, nu0}).value.norm_fro();
      const double m2 = mf.eval({t, nu2}).value.norm_fro();
      score[size_t(i)] = m2 / std::max(m0, 1e-300);
    }
    for (int i = 0; i < resolution; ++i) {
      const bool flagged = map.records[size_t(i)].pole_candidate;
      const double left = i > 0 ? score[size_t(i - 1)] : 0.0;
      const double right = i + 1 < resolution ? score[size_t(i + 1)] : 0.0;
      const bool peaked = score[size_t(i)] > 1.5 && score[size_t(i)] >= left &&
                          score[size_t(i)] >= right;
      if (flagged || peaked) cands.push_back({a + step * i, false});
    }
  }
  if (const auto* smf = dynamic_cast<const SystemMFunction*>(&mf)) {
    // Far-window clamp row: the section roots converge to the same
    // half-line levels for any terminal row.
    const int nn = smf->system().n();
    Mat clamp(nn, 2 * nn);
    for (int i = 0; i < nn; ++i) clamp(i, i) = 1.0;
    const BoundaryMatrix beta(clamp);
    auto is_cont = [&](int i) {
      return map.records[size_t(i)].verdict == SpectrumVerdict::Continuous;
    };
    int run_start = -1;
    auto flush_run = [&](int run_end) {
      if (run_start < 0) return;
      const double lo = a + step * run_start;
      const double hi = a + step * run_end;
      DetScanOptions dopts;
      dopts.grid_points = (run_end - run_start) * 8 + 1;
      const auto roots = det_root_scan(smf->system(), smf->alpha(), beta, 2048,
                                       lo, hi, dopts);
      for (const auto& r : roots)
        if (!r.suspect) cands.push_back({r.lambda, true});
      run_start = -1;
    };
    for (int i = 0; i + 1 < resolution; ++i) {
      if (!is_cont(i) && !is_cont(i + 1)) {
        if (run_start < 0) run_start = i;
      } else {
        flush_run(i);
      }
    }
    flush_run(resolution - 1);
  }

  // Cluster candidates within one grid cell; an exact section root wins the
  // cluster, otherwise keep the cluster midpoint.
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& x, const Candidate& y) { return x.pos < y.pos; });
  std::vector<Candidate> centers;
  for (size_t i = 0; i < cands.size();) {
    size_t j = i;
    while (j + 1 < cands.size() && cands[j + 1].pos - cands[j].pos < step) ++j;
    Candidate best{0.5 * (cands[i].pos + cands[j].pos), false};
    for (size_t k = i; k <= j; ++k)
      if (cands[k].from_root) best = cands[k];
    centers.push_back(best);
    i = j + 1;
  }

  for (size_t c = 0; c < centers.size(); ++c) {
    const double t = centers[c].pos;
    double gap = 1e300;
    if (c > 0) gap = std::min(gap, t - centers[c - 1].pos);
    if (c + 1 < centers.size()) gap = std::min(gap, centers[c + 1].pos - t);
    const int idx = std::clamp(int(std::lround((t - a) / step)), 0, resolution - 1);

    ClassifyOptions o = opts;
    o.grid_step = step;
    o.refine_pole = true;
    o.neighbor_gap = gap;
    o.force_pole_test = true;
    o.peak_bracket = centers[c].from_root ? 1e-4 : step;
    ClassificationRecord rec = classify_point(mf, t, o);
    rec.lambda0 = a + step * idx;
    if (rec.verdict == SpectrumVerdict::DiscreteEigenvalue ||
        rec.verdict == SpectrumVerdict::PointContinuous) {
      map.records[size_t(idx)] = rec;
      if (rec.verdict == SpectrumVerdict::DiscreteEigenvalue &&
          rec.refined_lambda >= a && rec.refined_lambda <= b)
        map.eigenvalues.push_back(
            {rec.refined_lambda, *rec.k_minus1, rec.l_residual});
    } else if (map.records[size_t(idx)].pole_candidate) {
      map.records[size_t(idx)] = rec;
    }
  }

  // Flagged grid points that were not their cluster's center still hold the
  // deferred phase-one state; give them a full pass of their own.
  for (int i = 0; i < resolution; ++i) {
    auto& r = map.records[size_t(i)];
    if (!(r.pole_candidate && r.verdict == SpectrumVerdict::Undetermined))
      continue;
    ClassifyOptions o = opts;
    o.grid_step = step;
    o.refine_pole = true;
    double gap = 1e300;
    for (const auto& c : centers)
      if (std::abs(c.pos - r.lambda0) > 1e-12)
        gap = std::min(gap, std::abs(c.pos - r.lambda0));
    o.neighbor_gap = gap;
    r = classify_point(mf, a + step * i, o);
  }

  std::sort(map.eigenvalues.begin(), map.eigenvalues.end(),
            [](const EigenvalueEntry& x, const EigenvalueEntry& y) {
              return x.lambda < y.lambda;
            });
  std::vector<EigenvalueEntry> dedup;
  for (const auto& e : map.eigenvalues) {
    if (!dedup.empty() && std::abs(e.lambda - dedup.back().lambda) < 0.5 * step)
      continue;
    dedup.push_back(e);
  }
  map.eigenvalues = std::move(dedup);
  return map;
}

SpectralMap scan_spectrum(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
                          double a, double b, int resolution,
                          const ClassifyOptions& opts) {
  SystemMFunction mf(sys, alpha);
  return scan_spectrum(mf, a, b, resolution, opts);
}

InterlaceReport interlace_check(const SymplecticSystem& sys,
                                const BoundaryMatrix& alpha,
                                const BoundaryMatrix& alpha_hat, double a,
                                double b, int resolution,
                                const ClassifyOptions& opts) {
  InterlaceReport rep;
  const int n = sys.n();

  const Mat cross = alpha.mat() * sym_j(n) * alpha_hat.mat().adjoint();
  const auto sv2 = hermitian_eigenvalues(cross.adjoint() * cross);
  double sv_max = std::sqrt(std::max(0.0, sv2.back()));
  for (double s2 : sv2)
    if (std::sqrt(std::max(0.0, s2)) > 1e-8 * std::max(1.0, sv_max)) ++rep.m;

  const SpectralMap scan_a = scan_spectrum(sys, alpha, a, b, resolution, opts);
  const SpectralMap scan_h = scan_spectrum(sys, alpha_hat, a, b, resolution, opts);

  for (const auto& r : scan_a.records)
    if (r.verdict == SpectrumVerdict::Undetermined) rep.inconclusive = true;
  for (const auto& r : scan_h.records)
    if (r.verdict == SpectrumVerdict::Undetermined) rep.inconclusive = true;

  for (const auto& e : scan_a.eigenvalues) rep.eigs_alpha.push_back(e.lambda);
  for (const auto& e : scan_h.eigenvalues) rep.eigs_alpha_hat.push_back(e.lambda);

  rep.scalar_case = (n == 1) && cross.norm_fro() > 1e-9;

  const auto& ea = rep.eigs_alpha;
  const auto& eh = rep.eigs_alpha_hat;
  for (size_t i = 0; i + 1 < ea.size(); ++i) {
    int count = 0;
    for (double x : eh)
      if (x > ea[i] + 1e-9 && x < ea[i + 1] - 1e-9) ++count;
    rep.gap_counts.push_back(count);
    if (count > rep.m) rep.count_bound_ok = false;
    if (rep.scalar_case && count != 1) rep.scalar_strict_ok = false;
  }
  for (size_t i = 0; i + size_t(n) < ea.size(); ++i) {
    bool found = false;
    for (double x : eh)
      if (x >= ea[i] - 1e-9 && x <= ea[i + size_t(n)] + 1e-9) found = true;
    if (!found) rep.pigeonhole_ok = false;
  }
  return rep;
}

}  // namespace symspec
