#ifndef SYMSPEC_CORE_HPP
#define SYMSPEC_CORE_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "symspec/errors.hpp"
#include "symspec/matrix.hpp"
#include "symspec/random.hpp"

namespace symspec {

using Index = long;

/// Scalar coefficient sequence over k >= 0. Pure function of k.
/// Kinds: constant, affine in k, periodic, or tabulated with a tail rule.
class ScalarSeq {
public:
  enum class Tail { RepeatLast, Error };

  static ScalarSeq constant(double v);
  static ScalarSeq affine(double base, double slope);  // base + slope*k
  static ScalarSeq periodic(std::vector<double> values);
  static ScalarSeq table(std::vector<double> values, Tail tail);

  double operator()(Index k) const;

  std::string describe() const;

private:
  enum class Kind { Constant, Affine, Periodic, Table } kind_ = Kind::Constant;
  double base_ = 0.0, slope_ = 0.0;
  std::vector<double> values_;
  Tail tail_ = Tail::RepeatLast;
};

/// Coefficient pair (S_k, Psi_k) of a discrete symplectic system.
struct SystemCoeffs {
  Mat s;    // 2n x 2n, symplectic
  Mat psi;  // 2n x 2n, Hermitian psd with Psi J Psi = 0
};

/// Half-line system z_k = (S_k + lambda V_k) z_{k+1} with weight Psi_k,
/// where V_k = -J Psi_k S_k. Coefficients come from a pure provider,
/// immutable after construction and safe to call concurrently.
class SymplecticSystem {
public:
  using Provider = std::function<SystemCoeffs(Index)>;

  SymplecticSystem() = default;
  SymplecticSystem(int half_dim, Provider provider, std::string label)
      : n_(half_dim), provider_(std::move(provider)), label_(std::move(label)) {}

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const std::string& label() const { return label_; }

  SystemCoeffs coeffs(Index k) const;
  Mat s(Index k) const { return coeffs(k).s; }
  Mat psi(Index k) const { return coeffs(k).psi; }
  Mat v(Index k) const;  // -J Psi_k S_k

private:
  int n_ = 0;
  Provider provider_;
  std::string label_;
};

/// Boundary matrix alpha with alpha alpha* = I and alpha J alpha* = 0.
/// For n = 1 the angle constructor alpha = (sin a0, cos a0) is exact.
class BoundaryMatrix {
public:
  BoundaryMatrix() = default;
  explicit BoundaryMatrix(const Mat& alpha, double tol = 1e-10);
  static BoundaryMatrix from_angle(double a0);

  int n() const { return mat_.rows(); }
  const Mat& mat() const { return mat_; }
  /// Residuals of the two defining identities.
  static double gamma_residual(const Mat& alpha);

private:
  Mat mat_;
};

/// Pseudorandom element of the boundary class, from a seeded generator.
BoundaryMatrix random_boundary(int n, Rng& rng);

struct CheckResult {
  std::string name;
  double worst_residual = 0.0;
  Index first_bad_k = -1;
  bool pass = true;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool pass = true;
  const CheckResult* find(const std::string& name) const;
};

/// Structural identities of the coefficient pair over k in [0, k_max]:
/// symplecticity of S, Hermitian psd weight, Psi J Psi = 0, and the
/// Psi <-> V roundtrip. Tolerance is scaled per check by the coefficient size.
ValidationReport validate_system(const SymplecticSystem& sys, Index k_max,
                                 double tol = 1e-10);

struct AtkinsonResult {
  bool positive = false;
  Mat gram;            // sum over [0, N0] of Phi_k* Psi_k Phi_k at the probe
  double min_eig = 0;  // smallest eigenvalue of the Gram matrix
};

/// Positive-definiteness of the solution Gram matrix over the window [0, N0]
/// at probe lambda = 0; positive definite iff every nontrivial solution has
/// positive weighted seminorm there.
AtkinsonResult check_atkinson(const SymplecticSystem& sys, Index n0,
                              double tol = 1e-10);

enum class PsiVDirection { PsiToV, VToPsi };

/// Convert between the weight Psi and the spectral coefficient V for one
/// index: V = -J Psi S and Psi = J S J V* J. Requires symplectic S.
Mat psi_v_convert(const Mat& s, const Mat& x, PsiVDirection dir,
                  double tol = 1e-8);

/// Block direct sum of two systems (coordinates interleaved so the canonical
/// skew structure is preserved); spectrum of the sum is the union.
SymplecticSystem direct_sum(const SymplecticSystem& a, const SymplecticSystem& b);
BoundaryMatrix direct_sum(const BoundaryMatrix& a, const BoundaryMatrix& b);

}  // namespace symspec

#endif
