#include "doctest.h"
#include "symspec/matrix.hpp"

using namespace symspec;

TEST_CASE("solve and inverse round-trip") {
  Mat a(3, 3, {Complex(2, 1), Complex(0, -1), Complex(1, 0),
               Complex(0, 2), Complex(3, 0),  Complex(-1, 1),
               Complex(1, 1), Complex(0, 0),  Complex(2, -2)});
  const Mat inv = inverse(a);
  CHECK((a * inv - Mat::identity(3)).norm_fro() < 1e-12);
  CHECK((inv * a - Mat::identity(3)).norm_fro() < 1e-12);

  Mat b(3, 2);
  b(0, 0) = Complex(1, 2);
  b(2, 1) = Complex(-3, 1);
  const Mat x = solve(a, b);
  CHECK((a * x - b).norm_fro() < 1e-12);
}

TEST_CASE("solve on a singular matrix throws") {
  Mat a(2, 2, {1.0, 2.0, 2.0, 4.0});
  CHECK_THROWS_AS(inverse(a), std::runtime_error);
}

TEST_CASE("hermitian eigenvalues of known matrices") {
  Mat a(2, 2, {Complex(2, 0), Complex(0, -1), Complex(0, 1), Complex(2, 0)});
  const auto ev = hermitian_eigenvalues(a);  // 2 -+ 1
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));

  Mat d(4, 4);
  d(0, 0) = -1.0;
  d(1, 1) = 7.0;
  d(2, 2) = 0.25;
  d(3, 3) = 3.0;
  const auto dv = hermitian_eigenvalues(d);
  CHECK(dv[0] == doctest::Approx(-1.0));
  CHECK(dv[3] == doctest::Approx(7.0));
}

TEST_CASE("canonical skew matrix") {
  const Mat j = sym_j(2);
  CHECK((j * j + Mat::identity(4)).norm_fro() == 0.0);
  CHECK((j.adjoint() + j).norm_fro() == 0.0);
}

TEST_CASE("hermitian split") {
  Mat a(2, 2, {Complex(1, 1), Complex(2, 3), Complex(0, -1), Complex(4, 0)});
  const Mat h = a.hermitian_part();
  const Mat s = a.imag_part_herm();
  CHECK(h.herm_defect() < 1e-15);
  CHECK(s.herm_defect() < 1e-15);
  CHECK((h + s * Complex(0, 1) - a).norm_fro() < 1e-15);
}
