#include "symspec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symspec {

namespace {
void check_same_shape(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("Mat: shape mismatch");
}
}  // namespace

Mat Mat::operator+(const Mat& o) const {
  check_same_shape(*this, o);
  Mat r = *this;
  r += o;
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_same_shape(*this, o);
  Mat r = *this;
  r -= o;
  return r;
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& v : r.a_) v = -v;
  return r;
}

Mat& Mat::operator+=(const Mat& o) {
  check_same_shape(*this, o);
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  check_same_shape(*this, o);
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Mat& Mat::operator*=(Complex s) {
  for (auto& v : a_) v *= s;
  return *this;
}

Mat Mat::operator*(Complex s) const {
  Mat r = *this;
  r *= s;
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Mat: product shape");
  Mat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Complex aik = (*this)(i, k);
      if (aik == Complex(0.0)) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
    }
  return r;
}

Mat Mat::adjoint() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Mat Mat::conjugate() const {
  Mat r = *this;
  for (auto& v : r.a_) v = std::conj(v);
  return r;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  Mat r(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
  return r;
}

void Mat::set_block(int r0, int c0, const Mat& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Mat Mat::hcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("Mat: hcat rows");
  Mat r(a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

Complex Mat::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Mat::norm_fro() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double Mat::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double Mat::herm_defect() const { return (*this - adjoint()).norm_fro(); }

Mat Mat::hermitian_part() const { return (*this + adjoint()) * Complex(0.5); }

Mat Mat::imag_part_herm() const {
  return (*this - adjoint()) * (Complex(0.0, -0.5));
}

Mat sym_j(int n) {
  Mat j(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return j;
}

Mat solve(Mat a, Mat b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw std::invalid_argument("solve: shape");
  const int n = a.rows();
  const int m = b.cols();
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(a(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (!(best > 0.0) || !std::isfinite(best))
      throw std::runtime_error("solve: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      for (int j = 0; j < m; ++j) std::swap(b(col, j), b(piv, j));
    }
    const Complex d = a(col, col);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col) / d;
      if (f == Complex(0.0)) continue;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      for (int j = 0; j < m; ++j) b(r, j) -= f * b(col, j);
    }
  }
  Mat x(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) x(i, j) = b(i, j) / a(i, i);
  return x;
}

Mat inverse(const Mat& a) { return solve(a, Mat::identity(a.rows())); }

double cond_estimate(const Mat& a) {
  try {
    return a.norm_fro() * inverse(a).norm_fro();
  } catch (const std::runtime_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::vector<double> hermitian_eigenvalues(const Mat& a_in) {
  if (a_in.rows() != a_in.cols()) throw std::invalid_argument("eig: square only");
  Mat a = a_in.hermitian_part();
  const int n = a.rows();
  if (n == 1) return {a(0, 0).real()};

  const double scale = std::max(a.max_abs(), 1.0);
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) < 1e-15 * scale * n) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double b = std::abs(apq);
        if (b < 1e-18 * scale) continue;
        const Complex phase = apq / b;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * b);
        const double t =
            (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const Complex s = t * c * phase;
        // A <- R* A R with R acting on columns p, q.
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - std::conj(s) * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = std::conj(s) * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

double min_eigenvalue(const Mat& hermitian) {
  return hermitian_eigenvalues(hermitian).front();
}

}  // namespace symspec
