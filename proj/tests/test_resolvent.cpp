#include "doctest.h"
#include "support.hpp"
#include "symspec/resolvent.hpp"

using namespace symspec;
using namespace symspec::testing;

TEST_CASE("kernel corner block by hand") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const Complex la(0, 1);
  GreenKernel g(sys, alpha, la, 64);

  // G_00 = [[0, 0], [1, M(la)]] for the Dirichlet row
  const Mat g00 = g.eval(0, 0);
  const Complex m = g.m_plus()(0, 0);
  CHECK(std::abs(g00(0, 0)) < 1e-12);
  CHECK(std::abs(g00(0, 1)) < 1e-12);
  CHECK(std::abs(g00(1, 0) - 1.0) < 1e-12);
  CHECK(std::abs(g00(1, 1) - m) < 1e-10);
}

TEST_CASE("kernel symmetry identities") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const Complex la(0.4, 1.1);
  GreenKernel g(sys, alpha, la, 64);
  GreenKernel gc(sys, alpha, std::conj(la), 64);
  const Mat j = sym_j(1);

  for (Index k : {0, 2, 5}) {
    for (Index jj : {0, 1, 3, 7}) {
      if (k == jj) continue;
      CHECK((gc.eval(k, jj) - g.eval(jj, k).adjoint()).norm_fro() < 1e-9);
    }
  }
  for (Index d : {0, 1, 4}) {
    const Mat diag = gc.eval(d, d) - g.eval(d, d).adjoint() + j;
    CHECK(diag.norm_fro() < 1e-10);
  }
}

TEST_CASE("boundary value problem solution") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const Complex la(0, 1);

  SUBCASE("zero data gives the zero solution") {
    WeightedSequence f;
    const auto z = resolve_bvp(sys, alpha, la, f, Mat(1, 1), 40);
    for (const auto& v : z.values) CHECK(v.norm_fro() < 1e-14);
  }

  SUBCASE("point source: defect, boundary row, and norm bound") {
    WeightedSequence f;
    f.k0 = 3;
    Mat f3(2, 1);
    f3(0, 0) = 1.0;
    f3(1, 0) = Complex(0, -0.5);
    f.values.push_back(f3);

    const auto z = resolve_bvp(sys, alpha, la, f, Mat(1, 1), 500);
    CHECK(bvp_defect(sys, la, z, f) < 1e-9);
    CHECK((alpha.mat() * z.at(0)).norm_fro() < 1e-12);

    const auto nz = seminorm(sys, z, 0, 500);
    const auto nf = seminorm(sys, f, 3, 3);
    CHECK(nz.norm <= nf.norm / std::abs(la.imag()) * (1.0 + 1e-6));
  }

  SUBCASE("boundary data enters through the summable columns") {
    WeightedSequence f;
    Mat xi(1, 1);
    xi(0, 0) = Complex(2.0, -1.0);
    const auto z = resolve_bvp(sys, alpha, la, f, xi, 60);
    CHECK((alpha.mat() * z.at(0) - xi).norm_fro() < 1e-12);
    CHECK(bvp_defect(sys, la, z, f) < 1e-10);
  }
}

TEST_CASE("norm bound over random compact data") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const Complex la(rng.uniform(-2, 2), rng.uniform(0.3, 2.0) *
                                             (rng.uniform() < 0.5 ? -1 : 1));
    WeightedSequence f;
    f.k0 = Index(rng.uniform(0, 10));
    const int len = 1 + int(rng.uniform(0, 20));
    for (int k = 0; k < len; ++k) {
      Mat fk(2, 1);
      fk(0, 0) = rng.complex_in_box(1, 1);
      fk(1, 0) = rng.complex_in_box(1, 1);
      f.values.push_back(fk);
    }
    const auto z = resolve_bvp(sys, alpha, la, f, Mat(1, 1), 400);
    const auto nz = seminorm(sys, z, 0, 400);
    const auto nf = seminorm(sys, f, f.k0, f.last());
    CHECK(nz.norm <= nf.norm / std::abs(la.imag()) * (1.0 + 1e-6));
    CHECK(bvp_defect(sys, la, z, f) < 1e-9);
  }
}

TEST_CASE("resolvent difference identity") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const Complex la(0, 1);
  const Complex mu(0.05, 1.02);

  WeightedSequence f;
  f.k0 = 2;
  for (int k = 0; k < 4; ++k) {
    Mat fk(2, 1);
    fk(0, 0) = 0.3 * (k + 1);
    fk(1, 0) = Complex(0, -0.2);
    f.values.push_back(fk);
  }
  const Index top = 260;
  const auto r_la = resolve_bvp(sys, alpha, la, f, Mat(1, 1), top);
  const auto r_mu = resolve_bvp(sys, alpha, mu, f, Mat(1, 1), top);

  // feed R_la f back in, truncated where the tail is negligible
  WeightedSequence g;
  g.k0 = 0;
  for (Index k = 0; k <= 180; ++k) g.values.push_back(r_la.at(k));
  const auto r_comp = resolve_bvp(sys, alpha, mu, g, Mat(1, 1), top);

  double worst = 0.0;
  for (Index k = 0; k <= 120; ++k) {
    const Mat lhs = r_mu.at(k) - r_la.at(k);
    const Mat rhs = r_comp.at(k) * (mu - la);
    worst = std::max(worst, (lhs - rhs).norm_fro());
  }
  CHECK(worst < 1e-7);
}
