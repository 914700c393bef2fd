#include "symspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

namespace symspec {

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d,
                                            std::vector<double> e) {
  const int m = int(d.size());
  if (m == 0) return {};
  if (int(e.size()) != m - 1 && m > 1)
    throw BadInput("tridiagonal_eigenvalues: off-diagonal size");
  e.push_back(0.0);

  for (int l = 0; l < m; ++l) {
    int iter = 0;
    int split;
    do {
      for (split = l; split < m - 1; ++split) {
        const double dd = std::abs(d[split]) + std::abs(d[split + 1]);
        if (std::abs(e[split]) <= 1e-16 * dd) break;
      }
      if (split != l) {
        if (iter++ == 60)
          throw Error("tridiagonal_eigenvalues: QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[split] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = split - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[split] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[split] = 0.0;
      }
    } while (split != l);
  }
  d.resize(size_t(m));
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> jacobi_truncation_eigs(const JacobiModel& m, Index size,
                                           double left_angle) {
  if (size < 1) return {};
  const double sa = std::sin(left_angle);
  const double ca = std::cos(left_angle);
  // sin(a0) y_0 = cos(a0) a_0 y_1. With sin away from zero y_0 is eliminated
  // into the first relation; at sin(a0) = 0 the condition is y_1 = 0 and the
  // section shifts one index to the right.
  const bool shifted = std::abs(sa) < 1e-300;
  const Index j0 = shifted ? 2 : 1;

  std::vector<double> diag(static_cast<size_t>(size));
  std::vector<double> off(static_cast<size_t>(size) - 1);
  std::vector<double> w(static_cast<size_t>(size));
  for (Index i = 0; i < size; ++i) {
    const Index j = j0 + i;
    diag[size_t(i)] = m.b(j);
    w[size_t(i)] = m.w(j);
    if (!(w[size_t(i)] > 0.0)) throw BadModel(j, "w_k must be positive");
    if (i + 1 < size) off[size_t(i)] = m.a(j);
  }
  if (!shifted) {
    const double a0 = m.a(0);
    diag[0] += a0 * a0 * (ca / sa);
  }
  for (Index i = 0; i < size; ++i) {
    diag[size_t(i)] /= w[size_t(i)];
    if (i + 1 < size)
      off[size_t(i)] /= std::sqrt(w[size_t(i)] * w[size_t(i + 1)]);
  }
  return tridiagonal_eigenvalues(std::move(diag), std::move(off));
}

namespace {

struct DetSample {
  double sign = 0.0;     // sign of the (real) determinant, or 0
  double log_abs = -std::numeric_limits<double>::infinity();
};

/// det(beta Ztilde_{N+1}(lambda)) as sign and log magnitude; the running
/// rescaling of the propagated block is folded back into log_abs so values
/// at different lambda stay comparable.
DetSample scaled_det(const SymplecticSystem& sys, const BoundaryMatrix& alpha,
                     const BoundaryMatrix& beta, Index n, Complex lambda) {
  const int half = sys.n();
  Mat zt = -(sym_j(half) * alpha.mat().adjoint());
  double log_scale = 0.0;
  for (Index k = 0; k <= n; ++k) {
    zt = transfer(sys, lambda, k, StepDirection::Forward) * zt;
    const double m_abs = zt.max_abs();
    if (m_abs > 1e100) {
      zt *= Complex(1.0 / m_abs);
      log_scale += std::log(m_abs);
    }
  }
  Mat b = beta.mat() * zt;
  const int nn = b.rows();
  Complex det = 1.0;
  double log_det = 0.0;
  for (int col = 0; col < nn; ++col) {
    int piv = col;
    for (int r = col + 1; r < nn; ++r)
      if (std::abs(b(r, col)) > std::abs(b(piv, col))) piv = r;
    if (b(piv, col) == Complex(0.0)) return DetSample{};
    if (piv != col) {
      for (int j = 0; j < nn; ++j) std::swap(b(col, j), b(piv, j));
      det = -det;
    }
    const Complex p = b(col, col);
    det *= p / std::abs(p);
    log_det += std::log(std::abs(p));
    for (int r = col + 1; r < nn; ++r) {
      const Complex f = b(r, col) / p;
      for (int j = col; j < nn; ++j) b(r, j) -= f * b(col, j);
    }
  }
  DetSample out;
  out.sign = det.real() >= 0.0 ? 1.0 : -1.0;
  out.log_abs = log_det + double(nn) * log_scale;
  return out;
}

/// Scalar three-term data read back from canonical half-dimension-one
/// coefficients; empty when the system does not have that shape.
struct ScalarForm {
  std::vector<double> a;  // a_0 .. a_m
  std::vector<double> b;  // b_1 .. b_m  (stored from index 1)
  std::vector<double> w;  // w_1 .. w_m
};

std::optional<ScalarForm> recover_scalar(const SymplecticSystem& sys, Index m) {
  if (sys.n() != 1) return std::nullopt;
  ScalarForm f;
  const double tol = 1e-12;
  for (Index k = 0; k <= m; ++k) {
    const SystemCoeffs c = sys.coeffs(k);
    const Complex s10 = c.s(1, 0);
    if (std::abs(s10.imag()) > tol || std::abs(c.s(1, 1)) > tol) return std::nullopt;
    const double ak = -s10.real();
    if (ak == 0.0) return std::nullopt;
    if (std::abs(c.s(0, 1) - Complex(1.0 / ak)) > tol) return std::nullopt;
    const Complex b1 = -c.s(0, 0) * ak;
    if (std::abs(b1.imag()) > tol) return std::nullopt;
    if (std::abs(c.psi(0, 0)) > tol || std::abs(c.psi(0, 1)) > tol ||
        std::abs(c.psi(1, 0)) > tol)
      return std::nullopt;
    const Complex w1 = c.psi(1, 1) * (ak * ak);
    if (std::abs(w1.imag()) > tol || !(w1.real() > 0.0)) return std::nullopt;
    f.a.push_back(ak);       // a_k
    f.b.push_back(b1.real());  // b_{k+1}
    f.w.push_back(w1.real());  // w_{k+1}
  }
  return f;
}

/// Eigenvalues of the section below lambda, by the pivot signs of the
/// shifted tridiagonal form. f.b[k] and f.w[k] hold the row k+1 data.
Index count_below(const ScalarForm& f, Index first_row, Index m, double diag_adjust,
                  double lambda) {
  Index count = 0;
  double q = 1.0;
  for (Index i = 0; i < m; ++i) {
    const Index j = first_row + i;  // section row index (1-based)
    double d = f.b[size_t(j - 1)] - lambda * f.w[size_t(j - 1)];
    if (i == 0) d += diag_adjust;
    if (i > 0) {
      const double e = f.a[size_t(j - 1)];
      if (q == 0.0) q = -1e-30;
      d -= e * e / q;
    }
    q = d;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<DetRoot> det_root_scan(const SymplecticSystem& sys,
                                   const BoundaryMatrix& alpha,
                                   const BoundaryMatrix& beta, Index n,
                                   double a, double b,
                                   const DetScanOptions& opts) {
  std::vector<DetRoot> roots;
  if (!(a < b)) return roots;
  int grid = opts.grid_points;
  if (grid <= 0) grid = std::max(2, int(std::ceil((b - a) * 8.0)) + 1);

  auto fval = [&](double t) {
    return scaled_det(sys, alpha, beta, n, Complex(t, 0.0));
  };

  // Canonical scalar sections admit exact pivot-count bracketing, which
  // separates clustered levels no grid would resolve; the determinant sign
  // still does the refinement.
  const bool alpha_real = sys.n() == 1 &&
                          std::abs(alpha.mat()(0, 0).imag()) < 1e-14 &&
                          std::abs(alpha.mat()(0, 1).imag()) < 1e-14;
  const bool beta_clamped = sys.n() == 1 &&
                            std::abs(beta.mat()(0, 1)) < 1e-14 &&
                            std::abs(std::abs(beta.mat()(0, 0)) - 1.0) < 1e-14;
  if (alpha_real && beta_clamped) {
    if (const auto scalar = recover_scalar(sys, n)) {
      const double sa = alpha.mat()(0, 0).real();
      const double ca = alpha.mat()(0, 1).real();
      const bool shifted = std::abs(sa) < 1e-300;
      const Index first_row = shifted ? 2 : 1;
      const Index m = shifted ? n - 1 : n;
      const double adjust =
          shifted ? 0.0 : scalar->a[0] * scalar->a[0] * (ca / sa);
      auto count = [&](double t) {
        return count_below(*scalar, first_row, m, adjust, t);
      };
      auto det_sign = [&](double t) { return fval(t).sign; };

      auto refine = [&](double lo, double hi) {
        double slo = det_sign(lo);
        for (int it = 0; it < 200 && hi - lo > opts.bisect_tol; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double sm = det_sign(mid);
          if (sm == 0.0) return mid;
          if (sm == slo) {
            lo = mid;
            slo = sm;
          } else {
            hi = mid;
          }
        }
        return 0.5 * (lo + hi);
      };

      std::function<void(double, double, Index, Index)> split =
          [&](double lo, double hi, Index clo, Index chi) {
            if (chi == clo) return;
            if (chi == clo + 1) {
              roots.push_back({refine(lo, hi), false});
              return;
            }
            const double mid = 0.5 * (lo + hi);
            if (hi - lo < 1e-13) {  // unresolvably close cluster
              for (Index r = clo; r < chi; ++r) roots.push_back({mid, true});
              return;
            }
            const Index cm = count(mid);
            split(lo, mid, clo, cm);
            split(mid, hi, cm, chi);
          };
      split(a, b, count(a), count(b));
      std::sort(roots.begin(), roots.end(), [](const DetRoot& x, const DetRoot& y) {
        return x.lambda < y.lambda;
      });
      return roots;
    }
  }

  std::vector<double> ts(static_cast<size_t>(grid));
  std::vector<DetSample> fs(static_cast<size_t>(grid));
  double log_peak = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    ts[size_t(i)] = a + (b - a) * double(i) / double(grid - 1);
    fs[size_t(i)] = fval(ts[size_t(i)]);
    log_peak = std::max(log_peak, fs[size_t(i)].log_abs);
  }
  (void)log_peak;
  const double suspect_drop = -std::log(opts.suspect_rel);

  auto bisect = [&](double lo, double hi, double slo) {
    for (int it = 0; it < 200 && hi - lo > opts.bisect_tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      const DetSample fm = fval(mid);
      if (fm.sign == 0.0) return mid;
      if (fm.sign == slo)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  // Cells with a deep dip of log|det| but no sign change can hide a close
  // pair of crossings; subdivide those a few times before giving up. The
  // dip is judged against the shoulder level of the original cell.
  auto process_cell = [&](double lo, double hi, DetSample flo, DetSample fhi,
                          double shoulder, int depth, auto&& self) -> void {
    if (flo.sign == 0.0 || flo.log_abs == -std::numeric_limits<double>::infinity()) {
      roots.push_back({lo, false});
      return;
    }
    if (flo.sign != fhi.sign) {
      roots.push_back({bisect(lo, hi, flo.sign), false});
      return;
    }
    if (depth >= 7) {
      if (std::min(flo.log_abs, fhi.log_abs) < shoulder - suspect_drop)
        roots.push_back({0.5 * (lo + hi), true});
      return;
    }
    const double mid = 0.5 * (lo + hi);
    const DetSample fm = fval(mid);
    const double edge = std::min(flo.log_abs, fhi.log_abs);
    if (fm.sign != flo.sign || fm.log_abs < edge - std::log(4.0)) {
      self(lo, mid, flo, fm, shoulder, depth + 1, self);
      self(mid, hi, fm, fhi, shoulder, depth + 1, self);
    }
  };

  for (int i = 0; i + 1 < grid; ++i) {
    const double shoulder =
        std::max(fs[size_t(i)].log_abs, fs[size_t(i + 1)].log_abs);
    process_cell(ts[size_t(i)], ts[size_t(i + 1)], fs[size_t(i)],
                 fs[size_t(i + 1)], shoulder, 0, process_cell);
  }

  std::sort(roots.begin(), roots.end(),
            [](const DetRoot& x, const DetRoot& y) { return x.lambda < y.lambda; });
  // Merge duplicates from adjacent cells.
  std::vector<DetRoot> merged;
  for (const auto& r : roots) {
    if (!merged.empty() &&
        std::abs(r.lambda - merged.back().lambda) < 4.0 * opts.bisect_tol) {
      merged.back().suspect = merged.back().suspect && r.suspect;
      continue;
    }
    merged.push_back(r);
  }
  return merged;
}

}  // namespace symspec
