#ifndef SYMSPEC_TESTS_SUPPORT_HPP
#define SYMSPEC_TESTS_SUPPORT_HPP

#include <cmath>
#include <vector>

#include "symspec/models.hpp"
#include "symspec/propagate.hpp"
#include "symspec/random.hpp"

namespace symspec::testing {

inline const double kPi = 3.14159265358979323846;

inline BoundaryMatrix dirichlet_alpha() {  // alpha = (1, 0): y_0 = 0
  return BoundaryMatrix::from_angle(kPi / 2.0);
}

inline SymplecticSystem free_jacobi() {
  return jacobi_to_symplectic(free_jacobi_model());
}

inline SymplecticSystem oscillator(double c = 1.0) {
  return jacobi_to_symplectic(oscillator_model(c));
}

/// Random periodic Jacobi model with moderate coefficients; transfer
/// matrices stay elliptic on the spectral bands, which keeps long windows
/// bounded.
inline JacobiModel random_periodic_model(Rng& rng, int period = 3) {
  JacobiModel m;
  std::vector<double> av, bv, wv;
  for (int i = 0; i < period; ++i) {
    av.push_back(rng.uniform(0.8, 1.25));
    bv.push_back(rng.uniform(-0.6, 0.6));
    wv.push_back(rng.uniform(0.8, 1.25));
  }
  m.a = ScalarSeq::periodic(av);
  m.b = ScalarSeq::periodic(bv);
  m.w = ScalarSeq::periodic(wv);
  m.label = "random_periodic";
  return m;
}

/// Trace of the one-period transfer product at real lambda (half dim 1).
inline double monodromy_trace(const SymplecticSystem& sys, double lambda,
                              int period) {
  Mat t = Mat::identity(2);
  for (int k = 0; k < period; ++k)
    t = transfer(sys, Complex(lambda, 0.0), k, StepDirection::Forward) * t;
  return t.trace().real();
}

/// A real spectral-band point of a periodic scalar system: |trace| < 1.9.
inline double sample_band_point(const SymplecticSystem& sys, Rng& rng,
                                int period, double lo = -2.5, double hi = 2.5) {
  for (int tries = 0; tries < 400; ++tries) {
    const double t = rng.uniform(lo, hi);
    if (std::abs(monodromy_trace(sys, t, period)) < 1.9) return t;
  }
  return 0.0;
}

/// Bounded-orbit probe near the bands: band point plus a whisker of
/// imaginary part, so thousand-step windows stay far from overflow.
inline Complex sample_bounded_lambda(const SymplecticSystem& sys, Rng& rng,
                                     int period) {
  const double t = sample_band_point(sys, rng, period);
  return {t, rng.uniform(-1e-3, 1e-3)};
}

}  // namespace symspec::testing

#endif
