#ifndef SYMSPEC_MATRIX_HPP
#define SYMSPEC_MATRIX_HPP

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace symspec {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Sized for the small blocks this library
/// works with (2n x 2n with n <= 4 or so); no attempt at large-scale speed.
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  Mat(int rows, int cols, std::initializer_list<Complex> vals)
      : rows_(rows), cols_(cols), a_(vals) {
    if (a_.size() != size_t(rows) * cols) throw std::invalid_argument("Mat: init size");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  Complex& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat operator*(const Mat& o) const;
  Mat operator*(Complex s) const;
  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(Complex s);

  Mat adjoint() const;
  Mat transpose() const;
  Mat conjugate() const;

  Mat block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Mat& b);
  /// Horizontal concatenation [a | b].
  static Mat hcat(const Mat& a, const Mat& b);

  Complex trace() const;
  double norm_fro() const;
  double max_abs() const;

  /// Hermitian defect ||A - A*||_F.
  double herm_defect() const;
  /// (A + A*)/2.
  Mat hermitian_part() const;
  /// (A - A*)/(2i); Hermitian for any A.
  Mat imag_part_herm() const;

  friend Mat operator*(Complex s, const Mat& m) { return m * s; }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Complex> a_;
};

/// 2n x 2n canonical skew matrix [[0, I],[-I, 0]].
Mat sym_j(int n);

/// Solve A X = B by Gauss elimination with partial pivoting (square A).
/// Throws std::runtime_error on pivot breakdown.
Mat solve(Mat a, Mat b);
Mat inverse(const Mat& a);

/// ||A||_F * ||A^-1||_F, or +inf when A is numerically singular.
double cond_estimate(const Mat& a);

/// Eigenvalues of a Hermitian matrix (ascending), by cyclic complex Jacobi
/// rotations. The input is symmetrized first; intended for small matrices.
std::vector<double> hermitian_eigenvalues(const Mat& a);
double min_eigenvalue(const Mat& hermitian);

}  // namespace symspec

#endif
