#include "doctest.h"
#include "symspec/herglotz.hpp"

using namespace symspec;

namespace {
Mat scalar(double v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}
}  // namespace

TEST_CASE("step function evaluation and jumps") {
  StepSpectralFunction tau(1, {-1.0, 0.5}, {scalar(0.5), scalar(2.0)});
  CHECK(tau.eval(-2.0)(0, 0).real() == 0.0);
  CHECK(tau.eval(-1.0)(0, 0).real() == 0.5);  // right continuous
  CHECK(tau.eval(0.49)(0, 0).real() == 0.5);
  CHECK(tau.eval(3.0)(0, 0).real() == 2.5);
  CHECK(tau.jump_at(0.5)(0, 0).real() == 2.0);
  CHECK(tau.jump_at(0.1)(0, 0).real() == 0.0);

  CHECK_THROWS_AS(StepSpectralFunction(1, {0.0}, {scalar(-1.0)}), BadInput);
  CHECK_THROWS_AS(StepSpectralFunction(1, {1.0, 0.0}, {scalar(1.0), scalar(1.0)}),
                  BadInput);
}

TEST_CASE("rational model evaluation") {
  StepSpectralFunction tau(1, {0.0}, {scalar(1.0)});

  SUBCASE("unit jump at the origin") {
    const Mat m = herglotz_eval(tau, Mat(1, 1), Mat(1, 1), Complex(0, 1));
    CHECK(std::abs(m(0, 0) - Complex(0, 1)) < 1e-15);  // -1/i = i
  }
  SUBCASE("linear coefficient adds la * M1") {
    const Mat with = herglotz_eval(tau, Mat(1, 1), Mat::identity(1), Complex(0, 2));
    const Mat without = herglotz_eval(tau, Mat(1, 1), Mat(1, 1), Complex(0, 2));
    CHECK(std::abs((with - without)(0, 0) - Complex(0, 2)) < 1e-15);
  }
  SUBCASE("real breakpoint is a pole") {
    CHECK_THROWS_AS(herglotz_eval(tau, Mat(1, 1), Mat(1, 1), Complex(0, 0)),
                    PoleError);
  }
}

TEST_CASE("free lattice closed form") {
  // fixed point of m = 1/(-la - m) on the decaying branch
  const Complex mi = free_jacobi_m(Complex(0, 1));
  CHECK(std::abs(mi - Complex(0, (std::sqrt(5.0) - 1) / 2)) < 1e-15);
  const Complex m2i = free_jacobi_m(Complex(0, 2));
  CHECK(std::abs(m2i - Complex(0, std::sqrt(2.0) - 1)) < 1e-15);
  const Complex m3 = free_jacobi_m(Complex(3, 0));
  CHECK(std::abs(m3 - (std::sqrt(5.0) - 3) / 2) < 1e-15);
  // semicircle boundary density on the cut
  const Complex m0 = free_jacobi_m(Complex(0.5, 0));
  CHECK(m0.imag() == doctest::Approx(std::sqrt(4.0 - 0.25) / 2).epsilon(1e-14));
  // consistency of the fixed point relation off the cut
  for (Complex la : {Complex(0.7, 0.3), Complex(-1.9, -0.2), Complex(4.0, 1.0)}) {
    const Complex m = free_jacobi_m(la);
    CHECK(std::abs(m * m + la * m + 1.0) < 1e-12);
    if (la.imag() > 0) CHECK(m.imag() > 0);
  }
}

TEST_CASE("model with semicircle part is Nevanlinna") {
  StepSpectralFunction tau(1, {0.0}, {scalar(0.5)});
  HerglotzModel model(Mat(1, 1), Mat(1, 1), tau, 1.0);
  for (Complex la : {Complex(0.2, 0.4), Complex(-1.0, 0.01), Complex(2.5, 2.0)}) {
    const Mat m = model.eval(la);
    CHECK(m(0, 0).imag() > 0);
    const Mat md = model.eval(std::conj(la));
    CHECK((md - m.adjoint()).norm_fro() < 1e-14);
  }
}
