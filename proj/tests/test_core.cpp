#include "doctest.h"
#include "support.hpp"
#include "symspec/core.hpp"

using namespace symspec;
using namespace symspec::testing;

TEST_CASE("free Jacobi system passes validation") {
  const auto sys = free_jacobi();
  const auto rep = validate_system(sys, 100, 1e-10);
  CHECK(rep.pass);
  for (const auto& c : rep.checks) CHECK(c.worst_residual < 1e-12);
}

TEST_CASE("negative weight is caught with check name and index") {
  auto provider = [](Index) {
    Mat s = Mat::identity(2);
    Mat psi(2, 2);
    psi(1, 1) = -1.0;
    return SystemCoeffs{s, psi};
  };
  SymplecticSystem sys(1, provider, "bad weight");
  const auto rep = validate_system(sys, 5);
  CHECK_FALSE(rep.pass);
  const auto* psd = rep.find("Psi psd");
  REQUIRE(psd != nullptr);
  CHECK_FALSE(psd->pass);
  CHECK(psd->first_bad_k == 0);
}

TEST_CASE("identity system with zero weight is valid") {
  auto provider = [](Index) {
    return SystemCoeffs{Mat::identity(2), Mat(2, 2)};
  };
  SymplecticSystem sys(1, provider, "trivial");
  CHECK(validate_system(sys, 10).pass);
  // transfer is identity for every lambda
  const Mat t = transfer(sys, Complex(0.7, -2.1), 3, StepDirection::Backward);
  CHECK((t - Mat::identity(2)).norm_fro() == 0.0);
}

TEST_CASE("Atkinson window check") {
  const auto sys = free_jacobi();
  const auto r1 = check_atkinson(sys, 1);
  CHECK(r1.positive);

  auto zero_weight = [](Index) {
    return SystemCoeffs{sym_j(1), Mat(2, 2)};
  };
  SymplecticSystem zsys(1, zero_weight, "no weight");
  CHECK_FALSE(check_atkinson(zsys, 1).positive);

  const auto osc = oscillator(1.0);
  CHECK(check_atkinson(osc, 1).positive);

  // positivity is monotone in the window length
  const auto r5 = check_atkinson(sys, 5);
  CHECK(r5.positive);
  CHECK(r5.min_eig >= r1.min_eig - 1e-12);
}

TEST_CASE("Psi <-> V conversion") {
  const Mat s = sym_j(1);
  Mat psi(2, 2);
  psi(1, 1) = 1.0;

  SUBCASE("zero maps to zero") {
    CHECK(psi_v_convert(s, Mat(2, 2), PsiVDirection::PsiToV).norm_fro() == 0.0);
  }
  SUBCASE("free Jacobi by hand") {
    const Mat v = psi_v_convert(s, psi, PsiVDirection::PsiToV);
    Mat expected(2, 2);
    expected(0, 0) = 1.0;
    CHECK((v - expected).norm_fro() < 1e-15);
  }
  SUBCASE("round-trip is the identity") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const auto model = random_periodic_model(rng);
      const auto sys = jacobi_to_symplectic(model);
      const auto c = sys.coeffs(trial % 7);
      const Mat v = psi_v_convert(c.s, c.psi, PsiVDirection::PsiToV);
      const Mat back = psi_v_convert(c.s, v, PsiVDirection::VToPsi);
      CHECK((back - c.psi).norm_fro() <
            10.0 * 2.2e-16 * std::max(1.0, c.psi.norm_fro()));
    }
  }
  SUBCASE("non-symplectic input is rejected") {
    CHECK_THROWS_AS(
        psi_v_convert(Mat::identity(2) * Complex(2.0), psi, PsiVDirection::PsiToV),
        StructureError);
  }
}

TEST_CASE("boundary matrices") {
  const auto a = BoundaryMatrix::from_angle(0.3);
  CHECK(BoundaryMatrix::gamma_residual(a.mat()) < 1e-15);

  Mat bad(1, 2, {2.0, 0.0});
  CHECK_THROWS_AS(BoundaryMatrix{bad}, StructureError);

  Rng rng(5);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 5; ++t) {
      const auto r = random_boundary(n, rng);
      CHECK(BoundaryMatrix::gamma_residual(r.mat()) < 1e-9);
    }
}

TEST_CASE("direct sums keep structure") {
  Rng rng(77);
  const auto a = jacobi_to_symplectic(random_periodic_model(rng));
  const auto b = jacobi_to_symplectic(random_periodic_model(rng));
  const auto sum = direct_sum(a, b);
  CHECK(sum.n() == 2);
  CHECK(validate_system(sum, 40).pass);

  const auto alpha =
      direct_sum(dirichlet_alpha(), BoundaryMatrix::from_angle(0.7));
  CHECK(BoundaryMatrix::gamma_residual(alpha.mat()) < 1e-14);
}
