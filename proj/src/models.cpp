#include "symspec/models.hpp"

#include <cmath>

namespace symspec {

SymplecticSystem jacobi_to_symplectic(const JacobiModel& m) {
  auto a = m.a;
  auto b = m.b;
  auto w = m.w;
  auto provider = [a, b, w](Index k) {
    const double ak = a(k);
    const double bk1 = b(k + 1);
    const double wk1 = w(k + 1);
    if (ak == 0.0) throw BadModel(k, "a_k must be nonzero");
    // A nonpositive weight is left for the validator to report as a
    // definiteness failure rather than rejected here.
    Mat s(2, 2);
    s(0, 0) = -bk1 / ak;
    s(0, 1) = 1.0 / ak;
    s(1, 0) = -ak;
    s(1, 1) = 0.0;
    Mat psi(2, 2);
    psi(1, 1) = wk1 / (ak * ak);
    return SystemCoeffs{s, psi};
  };
  return SymplecticSystem(1, provider, m.label);
}

std::vector<Complex> jacobi_recurrence(const JacobiModel& m, Complex lambda,
                                       Complex y0, Complex y1, Index count) {
  std::vector<Complex> y;
  y.reserve(size_t(count));
  if (count > 0) y.push_back(y0);
  if (count > 1) y.push_back(y1);
  for (Index k = 2; k < count; ++k) {
    // a_{k-1} y_k = (lambda w_{k-1} - b_{k-1}) y_{k-1} - a_{k-2} y_{k-2}
    const double am1 = m.a(k - 1);
    const double am2 = m.a(k - 2);
    const double bm1 = m.b(k - 1);
    const double wm1 = m.w(k - 1);
    if (am1 == 0.0) throw BadModel(k - 1, "a_k must be nonzero");
    y.push_back(((lambda * wm1 - bm1) * y[size_t(k - 1)] - am2 * y[size_t(k - 2)]) /
                am1);
  }
  return y;
}

JacobiModel free_jacobi_model() {
  JacobiModel m;
  m.label = "free_jacobi";
  return m;
}

JacobiModel oscillator_model(double c) {
  JacobiModel m;
  m.b = ScalarSeq::affine(0.0, c);
  m.label = "oscillator(" + std::to_string(c) + ")";
  return m;
}

BuiltinModel builtin_model(const std::string& name, double c, double t0) {
  BuiltinModel out;
  out.name = name;
  if (name == "free_jacobi") {
    out.jacobi = free_jacobi_model();
    out.system = jacobi_to_symplectic(*out.jacobi);
    return out;
  }
  if (name == "oscillator") {
    out.jacobi = oscillator_model(c);
    out.system = jacobi_to_symplectic(*out.jacobi);
    return out;
  }
  if (name == "one_jump_synthetic") {
    Mat jump(1, 1);
    jump(0, 0) = c;
    StepSpectralFunction tau(1, {t0}, {jump});
    out.synthetic = HerglotzModel(Mat(1, 1), Mat(1, 1), tau);
    return out;
  }
  throw BadInput("unknown builtin model: " + name);
}

}  // namespace symspec
