#include "doctest.h"
#include "support.hpp"
#include "symspec/herglotz.hpp"
#include "symspec/weyl.hpp"

using namespace symspec;
using namespace symspec::testing;

TEST_CASE("regular boundary function by hand at lambda = 0") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const Mat m1 = regular_m(sys, alpha, alpha, Complex(0, 0), 1);
  CHECK(std::abs(m1(0, 0)) < 1e-15);  // -yhat_1 / ytilde_1 = -0 / (-1)
  CHECK_THROWS_AS(regular_m(sys, alpha, alpha, Complex(0, 0), 2),
                  SingularBoundary);
}

TEST_CASE("disk-equation residual at moderate window") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const Complex la(0, 1);
  const Mat m = regular_m(sys, alpha, alpha, la, 60);
  CHECK(on_circle_residual(sys, alpha, la, 60, m) < 1e-9);
}

TEST_CASE("half-line limit against the quadratic fixed point") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();

  SUBCASE("lambda = i") {
    const auto ev = limit_m(sys, alpha, Complex(0, 1));
    CHECK(ev.converged);
    CHECK(std::abs(ev.value(0, 0) - Complex(0.0, (std::sqrt(5.0) - 1.0) / 2.0)) <
          1e-6);
    CHECK(ev.diameter < 1e-6);
    CHECK(ev.on_circle < 1e-9);
  }
  SUBCASE("lambda = 2i") {
    const auto ev = limit_m(sys, alpha, Complex(0, 2));
    CHECK(ev.converged);
    CHECK(std::abs(ev.value(0, 0) - Complex(0.0, std::sqrt(2.0) - 1.0)) < 1e-6);
  }
  SUBCASE("conjugate symmetry") {
    const auto up = limit_m(sys, alpha, Complex(0, 1));
    const auto dn = limit_m(sys, alpha, Complex(0, -1));
    CHECK((dn.value - up.value.adjoint()).norm_fro() < 1e-8);
  }
  SUBCASE("real resolvent point") {
    const auto ev = limit_m(sys, alpha, Complex(3, 0));
    CHECK(ev.converged);
    CHECK(std::abs(ev.value(0, 0) - (std::sqrt(5.0) - 3.0) / 2.0) < 1e-5);
  }
  SUBCASE("matches the closed form at assorted points") {
    for (Complex la : {Complex(0.3, 0.8), Complex(-1.2, 0.5), Complex(2.5, 1.5)}) {
      const auto ev = limit_m(sys, alpha, la);
      CHECK(ev.converged);
      CHECK(std::abs(ev.value(0, 0) - free_jacobi_m(la)) < 1e-7);
    }
  }
}

TEST_CASE("probe spread shrinks with the window") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const auto ev = limit_m(sys, alpha, Complex(0, 1));
  REQUIRE(ev.spread_history.size() >= 2);
  for (size_t i = 1; i < ev.spread_history.size(); ++i)
    CHECK(ev.spread_history[i] <= ev.spread_history[i - 1] + 1e-12);
}

TEST_CASE("Nevanlinna signs hold off the axis") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  Rng rng(7);
  for (int t = 0; t < 6; ++t) {
    const Complex la(rng.uniform(-2.5, 2.5), rng.uniform(0.05, 1.5));
    const auto ev = limit_m(sys, alpha, la);
    CHECK(ev.converged);
    CHECK(min_eigenvalue(ev.value.imag_part_herm()) > -1e-8);
  }
}

TEST_CASE("trial solution assembly") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const auto f = fundamental(sys, alpha, Complex(0, 1), 12);
  const auto x0 = weyl_solution(f, Mat(1, 1));
  for (Index k = 0; k <= 12; ++k)
    CHECK((x0.at(k) - f.zhat[size_t(k)]).norm_fro() == 0.0);
}

TEST_CASE("backward-built summable columns") {
  const auto sys = free_jacobi();
  const auto alpha = dirichlet_alpha();
  const Complex la(0, 1);
  const auto wc = weyl_columns(sys, alpha, la, 200);

  SUBCASE("implied value agrees with the limit") {
    const auto ev = limit_m(sys, alpha, la);
    CHECK((wc.m_implied - ev.value).norm_fro() < 1e-8);
  }
  SUBCASE("normalization row") {
    CHECK((alpha.mat() * wc.x.at(0) - Mat::identity(1)).norm_fro() < 1e-12);
  }
  SUBCASE("weighted tail converges geometrically") {
    const auto inc = seminorm_increments(sys, wc.x, 0, 200);
    double tail = 0.0;
    for (size_t k = 150; k < inc.size(); ++k) tail += inc[k];
    CHECK(tail < 1e-10);
    const auto s_all = seminorm(sys, wc.x, 0, 200);
    const auto s_half = seminorm(sys, wc.x, 0, 100);
    CHECK((s_all.gram - s_half.gram).norm_fro() < 1e-10);
  }
  SUBCASE("norm identity against the boundary value") {
    // ||X||^2 = Im M / Im la, column form of the pairing identity
    const auto s = seminorm(sys, wc.x, 0, 200);
    const double im_m = wc.m_implied(0, 0).imag();
    CHECK(std::abs(s.gram(0, 0).real() - im_m) < 1e-6);
  }
}

TEST_CASE("limit point diagnostics") {
  SUBCASE("free lattice") {
    const auto sys = free_jacobi();
    const auto rep = diagnose_limit_point(
        sys, {Complex(0, 1), Complex(0, 2), Complex(1, 1)}, 256);
    CHECK(rep.verdict == LimitPointVerdict::LimitPoint);
    for (const auto& p : rep.probes) CHECK(p.summable == 1);
  }
  SUBCASE("zero weight is inconclusive") {
    auto provider = [](Index) {
      return SystemCoeffs{Mat::identity(2), Mat(2, 2)};
    };
    SymplecticSystem sys(1, provider, "psi = 0");
    const auto rep = diagnose_limit_point(sys, {Complex(0, 1)}, 64);
    CHECK(rep.verdict == LimitPointVerdict::Inconclusive);
  }
  SUBCASE("discrete-spectrum model") {
    const auto sys = oscillator(1.0);
    const auto rep = diagnose_limit_point(sys, {Complex(0, 1)}, 256);
    CHECK(rep.verdict == LimitPointVerdict::LimitPoint);
  }
}
