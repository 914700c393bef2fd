#include "doctest.h"
#include "support.hpp"

using namespace symspec;
using namespace symspec::testing;

TEST_CASE("free model coefficients") {
  const auto sys = free_jacobi();
  const auto c = sys.coeffs(3);
  CHECK((c.s - sym_j(1)).norm_fro() == 0.0);
  Mat psi(2, 2);
  psi(1, 1) = 1.0;
  CHECK((c.psi - psi).norm_fro() == 0.0);
  Mat v(2, 2);
  v(0, 0) = 1.0;
  CHECK((sys.v(3) - v).norm_fro() == 0.0);
}

TEST_CASE("builder output is a valid system") {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto sys = jacobi_to_symplectic(random_periodic_model(rng));
    CHECK(validate_system(sys, 60).pass);
    CHECK(check_atkinson(sys, 1).positive);
  }
}

TEST_CASE("symplectic state reproduces the scalar recurrence") {
  Rng rng(19);
  const Index top = 1000;
  for (int t = 0; t < 10; ++t) {
    // fully random tabulated draws over the documented coefficient ranges
    std::vector<double> av, bv, wv;
    for (Index k = 0; k <= top + 2; ++k) {
      av.push_back(rng.uniform(0.5, 2.0));
      bv.push_back(rng.uniform(-2.0, 2.0));
      wv.push_back(rng.uniform(0.5, 2.0));
    }
    JacobiModel model;
    model.a = ScalarSeq::table(av, ScalarSeq::Tail::RepeatLast);
    model.b = ScalarSeq::table(bv, ScalarSeq::Tail::RepeatLast);
    model.w = ScalarSeq::table(wv, ScalarSeq::Tail::RepeatLast);
    const auto sys = jacobi_to_symplectic(model);
    const Complex la = rng.complex_in_box(1.5, 0.2);

    // state z_k = (y_k, -a_k y_{k+1}) with y_0 = 0, y_1 = 1
    Mat z0(2, 1);
    z0(0, 0) = 0.0;
    z0(1, 0) = -model.a(0);
    WeightedSequence none;
    WeightedSequence z;
    bool overflowed = false;
    try {
      z = propagate_inhomogeneous(sys, la, z0, none, top);
    } catch (const OverflowError&) {
      overflowed = true;  // rare strongly-growing draw; skip
    }
    if (overflowed) continue;

    const auto y = jacobi_recurrence(model, la, 0.0, 1.0, top + 2);
    double worst = 0.0;
    double scale = 1.0;
    for (Index k = 0; k <= top; ++k) {
      worst = std::max(worst, std::abs(z.at(k)(0, 0) - y[size_t(k)]));
      scale = std::max(scale, std::abs(y[size_t(k)]));
    }
    CHECK(worst / scale < 1e-12);
  }
}

TEST_CASE("builtin registry") {
  const auto fj = builtin_model("free_jacobi");
  REQUIRE(fj.system.has_value());
  CHECK(validate_system(*fj.system, 20).pass);

  const auto osc = builtin_model("oscillator", 1.0);
  REQUIRE(osc.jacobi.has_value());
  CHECK(osc.jacobi->b(4) == doctest::Approx(4.0));

  const auto oj = builtin_model("one_jump_synthetic", 1.0, 0.0);
  REQUIRE(oj.synthetic.has_value());
  // M(i) = -1/i = i for the unit jump at the origin
  const Mat m = oj.synthetic->eval(Complex(0, 1));
  CHECK(std::abs(m(0, 0) - Complex(0, 1)) < 1e-15);

  CHECK_THROWS_AS(builtin_model("nope"), BadInput);
}

TEST_CASE("bad model data is rejected or reported") {
  JacobiModel m;
  m.a = ScalarSeq::constant(0.0);
  CHECK_THROWS_AS(jacobi_to_symplectic(m).coeffs(0), BadModel);

  // a nonpositive weight surfaces as a definiteness failure in validation
  JacobiModel m2;
  m2.w = ScalarSeq::constant(-1.0);
  const auto rep = validate_system(jacobi_to_symplectic(m2), 5);
  CHECK_FALSE(rep.pass);
  const auto* psd = rep.find("Psi psd");
  REQUIRE(psd != nullptr);
  CHECK_FALSE(psd->pass);
}
