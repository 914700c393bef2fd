#include "doctest.h"
#include "support.hpp"

using namespace symspec;
using namespace symspec::testing;

TEST_CASE("transfer coefficient forms") {
  const auto sys = free_jacobi();
  const Mat t0 = transfer(sys, Complex(0, 0), 0, StepDirection::Backward);
  CHECK((t0 - sym_j(1)).norm_fro() == 0.0);

  Rng rng(23);
  for (int t = 0; t < 12; ++t) {
    const auto rsys = jacobi_to_symplectic(random_periodic_model(rng));
    const Complex la = rng.complex_in_box(2.0, 2.0);
    const Index k = Index(rng.uniform(0, 40));
    const Mat fwd = transfer(rsys, la, k, StepDirection::Forward);
    const Mat bwd = transfer(rsys, la, k, StepDirection::Backward);
    CHECK((fwd * bwd - Mat::identity(2)).norm_fro() < 1e-12);
    CHECK((bwd * fwd - Mat::identity(2)).norm_fro() < 1e-12);
  }
}

TEST_CASE("fundamental solution initial values and hand recurrence") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const auto f = fundamental(sys, alpha, Complex(0, 0), 4);

  CHECK((f.zhat[0] - alpha.mat().adjoint()).norm_fro() == 0.0);
  CHECK((f.ztilde[0] + sym_j(1) * alpha.mat().adjoint()).norm_fro() == 0.0);

  // y_{k+1} = -y_{k-1} at lambda = 0: Zhat columns carry y = 1,0,-1,0,...
  Mat zhat2(2, 1, {Complex(-1, 0), Complex(0, 0)});
  Mat ztilde2(2, 1, {Complex(0, 0), Complex(-1, 0)});
  CHECK((f.zhat[2] - zhat2).norm_fro() < 1e-15);
  CHECK((f.ztilde[2] - ztilde2).norm_fro() < 1e-15);
}

TEST_CASE("symplectic pairing of conjugate fundamentals") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const Complex la(1, 2);
  const auto f = fundamental(sys, alpha, la, 5);
  const auto fc = fundamental(sys, alpha, std::conj(la), 5);
  const Mat j = sym_j(1);
  for (Index k = 0; k <= 5; ++k) {
    const Mat w = fc.phi(k).adjoint() * j * f.phi(k);
    CHECK((w - j).norm_fro() < 1e-12);
  }
}

TEST_CASE("weighted window sums") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const auto f = fundamental(sys, alpha, Complex(0, 0), 8);

  WeightedSequence zt;
  zt.k0 = 0;
  zt.values = f.ztilde;

  // y = (0, -1, 0, 1, ...): weights collect |y_{k+1}|^2 over k = 0..3 -> 2
  const auto s = seminorm(sys, zt, 0, 3);
  CHECK(s.gram(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));

  const auto a = seminorm(sys, zt, 0, 7);
  const auto b = seminorm(sys, zt, 0, 2);
  const auto c = seminorm(sys, zt, 3, 7);
  CHECK((a.gram - b.gram - c.gram).norm_fro() < 1e-14);

  WeightedSequence zero;
  zero.k0 = 0;
  for (int k = 0; k < 5; ++k) zero.values.push_back(Mat(2, 1));
  CHECK(seminorm(sys, zero, 0, 4).norm == 0.0);
}

TEST_CASE("two-solution summation identity") {
  Rng rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const int period = 3;
    const auto model = random_periodic_model(rng, period);
    const auto sys = jacobi_to_symplectic(model);
    const Complex la = sample_bounded_lambda(sys, rng, period);
    const Complex nu = sample_bounded_lambda(sys, rng, period);
    const Index top = 200;

    WeightedSequence f, g;
    f.k0 = 0;
    g.k0 = 0;
    for (Index k = 0; k <= top; ++k) {
      Mat fk(2, 1), gk(2, 1);
      fk(0, 0) = rng.complex_in_box(0.5, 0.5);
      fk(1, 0) = rng.complex_in_box(0.5, 0.5);
      gk(0, 0) = rng.complex_in_box(0.5, 0.5);
      gk(1, 0) = rng.complex_in_box(0.5, 0.5);
      f.values.push_back(fk);
      g.values.push_back(gk);
    }
    Mat z0(2, 1, {Complex(0.4, 0.1), Complex(-0.2, 0.9)});
    Mat u0(2, 1, {Complex(-1.1, 0.0), Complex(0.3, -0.2)});
    const auto z = propagate_inhomogeneous(sys, la, z0, f, top + 1);
    const auto u = propagate_inhomogeneous(sys, nu, u0, g, top + 1);

    const Mat defect = lagrange_defect(sys, la, nu, z, u, f, g, 0, top);
    CHECK(defect.norm_fro() < 1e-10);
  }
}

TEST_CASE("homogeneous constancy of the pairing") {
  Rng rng(55);
  const int period = 3;
  const auto sys = jacobi_to_symplectic(random_periodic_model(rng, period));
  const Complex la = sample_bounded_lambda(sys, rng, period);

  WeightedSequence none;
  Mat z0(2, 1, {Complex(1.0, 0.2), Complex(0.5, -0.3)});
  Mat u0(2, 1, {Complex(-0.1, 1.2), Complex(0.8, 0.0)});
  const auto z = propagate_inhomogeneous(sys, la, z0, none, 301);
  const auto u = propagate_inhomogeneous(sys, std::conj(la), u0, none, 301);

  const Mat defect = lagrange_defect(sys, la, std::conj(la), z, u, none, none, 0, 300);
  CHECK(defect.norm_fro() < 1e-12);

  const Mat j = sym_j(1);
  const Mat w0 = z.at(0).adjoint() * j * u.at(0);
  const Mat w300 = z.at(300).adjoint() * j * u.at(300);
  CHECK((w0 - w300).norm_fro() < 1e-11);
}

TEST_CASE("zero sequences give zero defect") {
  const auto sys = free_jacobi();
  WeightedSequence z, none;
  z.k0 = 0;
  for (int k = 0; k < 10; ++k) z.values.push_back(Mat(2, 1));
  const Mat d = lagrange_defect(sys, Complex(1, 1), Complex(0, -2), z, z, none,
                                none, 0, 8);
  CHECK(d.norm_fro() == 0.0);
}
