#include "symspec/core.hpp"

#include <cmath>

namespace symspec {

ScalarSeq ScalarSeq::constant(double v) {
  ScalarSeq s;
  s.kind_ = Kind::Constant;
  s.base_ = v;
  return s;
}

ScalarSeq ScalarSeq::affine(double base, double slope) {
  ScalarSeq s;
  s.kind_ = Kind::Affine;
  s.base_ = base;
  s.slope_ = slope;
  return s;
}

ScalarSeq ScalarSeq::periodic(std::vector<double> values) {
  if (values.empty()) throw BadInput("periodic sequence needs values");
  ScalarSeq s;
  s.kind_ = Kind::Periodic;
  s.values_ = std::move(values);
  return s;
}

ScalarSeq ScalarSeq::table(std::vector<double> values, Tail tail) {
  if (values.empty()) throw BadInput("table sequence needs values");
  ScalarSeq s;
  s.kind_ = Kind::Table;
  s.values_ = std::move(values);
  s.tail_ = tail;
  return s;
}

double ScalarSeq::operator()(Index k) const {
  switch (kind_) {
    case Kind::Constant:
      return base_;
    case Kind::Affine:
      return base_ + slope_ * double(k);
    case Kind::Periodic:
      return values_[size_t(k % Index(values_.size()))];
    case Kind::Table:
      if (k < Index(values_.size())) return values_[size_t(k)];
      if (tail_ == Tail::RepeatLast) return values_.back();
      throw ProviderError(k, "table sequence exhausted");
  }
  throw ProviderError(k, "bad sequence kind");
}

std::string ScalarSeq::describe() const {
  switch (kind_) {
    case Kind::Constant:
      return "const(" + std::to_string(base_) + ")";
    case Kind::Affine:
      return "affine(" + std::to_string(base_) + "," + std::to_string(slope_) + ")";
    case Kind::Periodic:
      return "periodic[" + std::to_string(values_.size()) + "]";
    case Kind::Table:
      return "table[" + std::to_string(values_.size()) + "]";
  }
  return "?";
}

SystemCoeffs SymplecticSystem::coeffs(Index k) const {
  if (!provider_) throw ProviderError(k, "no provider");
  SystemCoeffs c = provider_(k);
  if (c.s.rows() != dim() || c.s.cols() != dim() || c.psi.rows() != dim() ||
      c.psi.cols() != dim())
    throw ProviderError(k, "coefficient shape");
  return c;
}

Mat SymplecticSystem::v(Index k) const {
  const SystemCoeffs c = coeffs(k);
  return -(sym_j(n_) * c.psi * c.s);
}

BoundaryMatrix::BoundaryMatrix(const Mat& alpha, double tol) : mat_(alpha) {
  if (alpha.cols() != 2 * alpha.rows())
    throw StructureError("alpha: not in Gamma (shape must be n x 2n)");
  if (gamma_residual(alpha) > tol) throw StructureError("alpha: not in Gamma");
}

BoundaryMatrix BoundaryMatrix::from_angle(double a0) {
  Mat a(1, 2);
  a(0, 0) = std::sin(a0);
  a(0, 1) = std::cos(a0);
  BoundaryMatrix b;
  b.mat_ = a;
  return b;
}

double BoundaryMatrix::gamma_residual(const Mat& alpha) {
  const int n = alpha.rows();
  const Mat aa = alpha * alpha.adjoint() - Mat::identity(n);
  const Mat aja = alpha * sym_j(n) * alpha.adjoint();
  return std::max(aa.norm_fro(), aja.norm_fro());
}

BoundaryMatrix random_boundary(int n, Rng& rng) {
  // alpha = ((I+H^2)^{-1/2}, (I+H^2)^{-1/2} H) with H random Hermitian:
  // both Gamma identities hold by construction.
  Mat h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = rng.uniform(-1.5, 1.5);
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = rng.complex_in_box(1.0, 1.0);
      h(j, i) = std::conj(h(i, j));
    }
  }
  const Mat m = Mat::identity(n) + h * h;
  // Denman-Beavers iteration; z converges to m^{-1/2}.
  Mat y = m;
  Mat z = Mat::identity(n);
  for (int it = 0; it < 60; ++it) {
    const Mat y_next = (y + inverse(z)) * Complex(0.5);
    const Mat z_next = (z + inverse(y)) * Complex(0.5);
    y = y_next;
    z = z_next;
    if ((y * y - m).norm_fro() < 1e-14) break;
  }
  const Mat c = z;
  Mat alpha(n, 2 * n);
  alpha.set_block(0, 0, c);
  alpha.set_block(0, n, c * h);
  return BoundaryMatrix(alpha, 1e-8);
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {
void record(ValidationReport& rep, CheckResult& c) {
  rep.checks.push_back(c);
  rep.pass = rep.pass && c.pass;
}
void update(CheckResult& c, double residual, double tol, Index k) {
  if (residual > c.worst_residual) c.worst_residual = residual;
  if (residual > tol && c.pass) {
    c.pass = false;
    c.first_bad_k = k;
  }
}
}  // namespace

ValidationReport validate_system(const SymplecticSystem& sys, Index k_max,
                                 double tol) {
  if (k_max < 1) throw BadInput("validate_system: k_max >= 1 required");
  if (!(tol > 0)) throw BadInput("validate_system: tol > 0 required");
  const Mat j = sym_j(sys.n());

  CheckResult symplectic{"S symplectic"};
  CheckResult hermitian{"Psi Hermitian"};
  CheckResult psd{"Psi psd"};
  CheckResult isotropic{"Psi J Psi = 0"};
  CheckResult roundtrip{"Psi = J S J V* J"};

  ValidationReport rep;
  for (Index k = 0; k <= k_max; ++k) {
    const SystemCoeffs c = sys.coeffs(k);
    const double scale_s = std::max(1.0, c.s.norm_fro());
    const double scale_p = std::max(1.0, c.psi.norm_fro());

    update(symplectic, (c.s.adjoint() * j * c.s - j).norm_fro(),
           tol * scale_s * scale_s, k);
    update(hermitian, c.psi.herm_defect(), tol * scale_p, k);
    update(psd, std::max(0.0, -min_eigenvalue(c.psi.hermitian_part())),
           tol * scale_p, k);
    update(isotropic, (c.psi * j * c.psi).norm_fro(), tol * scale_p * scale_p, k);

    const Mat v = -(j * c.psi * c.s);
    const Mat back = j * c.s * j * v.adjoint() * j;
    update(roundtrip, (back - c.psi).norm_fro(),
           tol * std::max(scale_p, scale_s), k);
  }
  record(rep, symplectic);
  record(rep, hermitian);
  record(rep, psd);
  record(rep, isotropic);
  record(rep, roundtrip);
  return rep;
}

AtkinsonResult check_atkinson(const SymplecticSystem& sys, Index n0, double tol) {
  const Mat j = sym_j(sys.n());
  const int d = sys.dim();
  Mat phi = Mat::identity(d);  // fundamental matrix at probe lambda = 0
  Mat gram(d, d);
  for (Index k = 0; k <= n0; ++k) {
    const SystemCoeffs c = sys.coeffs(k);
    gram += phi.adjoint() * c.psi * phi;
    // forward step at lambda = 0: Phi_{k+1} = -J S_k* J Phi_k
    phi = -(j * c.s.adjoint() * j) * phi;
    if (!(phi.max_abs() < 1e200)) throw PropagationError("atkinson: overflow");
  }
  AtkinsonResult r;
  r.gram = gram.hermitian_part();
  r.min_eig = min_eigenvalue(r.gram);
  r.positive = r.min_eig > tol;
  return r;
}

Mat psi_v_convert(const Mat& s, const Mat& x, PsiVDirection dir, double tol) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0)
    throw StructureError("psi_v_convert: S must be 2n x 2n");
  const int n = s.rows() / 2;
  const Mat j = sym_j(n);
  const double scale = std::max(1.0, s.norm_fro());
  if ((s.adjoint() * j * s - j).norm_fro() > tol * scale * scale)
    throw StructureError("psi_v_convert: S not symplectic");
  if (dir == PsiVDirection::PsiToV) return -(j * x * s);
  return j * s * j * x.adjoint() * j;
}

SymplecticSystem direct_sum(const SymplecticSystem& a, const SymplecticSystem& b) {
  const int na = a.n(), nb = b.n();
  const int n = na + nb;
  // Coordinate map: system a occupies y-slots [0,na) and p-slots [n, n+na);
  // system b the remaining slots. This keeps the canonical skew form.
  auto provider = [a, b, na, nb, n](Index k) {
    const SystemCoeffs ca = a.coeffs(k);
    const SystemCoeffs cb = b.coeffs(k);
    auto place = [&](const Mat& ma, const Mat& mb) {
      Mat m(2 * n, 2 * n);
      auto map_a = [&](int i) { return i < na ? i : n + (i - na); };
      auto map_b = [&](int i) { return i < nb ? na + i : n + na + (i - nb); };
      for (int i = 0; i < 2 * na; ++i)
        for (int jj = 0; jj < 2 * na; ++jj) m(map_a(i), map_a(jj)) = ma(i, jj);
      for (int i = 0; i < 2 * nb; ++i)
        for (int jj = 0; jj < 2 * nb; ++jj) m(map_b(i), map_b(jj)) = mb(i, jj);
      return m;
    };
    return SystemCoeffs{place(ca.s, cb.s), place(ca.psi, cb.psi)};
  };
  return SymplecticSystem(n, provider, a.label() + " (+) " + b.label());
}

BoundaryMatrix direct_sum(const BoundaryMatrix& a, const BoundaryMatrix& b) {
  const int na = a.n(), nb = b.n();
  const int n = na + nb;
  Mat m(n, 2 * n);
  auto map_a = [&](int i) { return i < na ? i : n + (i - na); };
  auto map_b = [&](int i) { return i < nb ? na + i : n + na + (i - nb); };
  for (int r = 0; r < na; ++r)
    for (int c = 0; c < 2 * na; ++c) m(r, map_a(c)) = a.mat()(r, c);
  for (int r = 0; r < nb; ++r)
    for (int c = 0; c < 2 * nb; ++c) m(na + r, map_b(c)) = b.mat()(r, c);
  return BoundaryMatrix(m);
}

}  // namespace symspec
