#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sglab/exact_solutions.hpp"

using namespace sglab;

namespace {

ModelParams model(double gamma) {
  ModelParams p;
  p.gamma_bias = gamma;
  p.horizon = 2.0;
  return p;
}

double max_residual(const KinkFamily& fam, const ModelParams& p) {
  auto u = [&](double x, double t) { return kink_value(fam, x, t); };
  return residual(u, p, 0.0, p.ell, 50, 0.0, p.horizon, 50, 1e-3).max_abs;
}

}  // namespace

TEST_CASE("pi transform") {
  CHECK(pi_transform(0.0) == doctest::Approx(std::numbers::pi / 2));
  CHECK(std::sin(pi_transform(0.7)) == doctest::Approx(1.0 / std::cosh(0.7)).epsilon(1e-14));
  CHECK(pi_transform(-800.0) == 0.0);
  CHECK(pi_transform(800.0) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("gamma0 closed form at the center") {
  const KinkFamily fam{FamilyKind::Gamma0, 0.5, 1.0};
  CHECK(kink_value(fam, 0.0, 0.0) == doctest::Approx(4.71238898038469).epsilon(1e-14));
  // levels 2 pi behind the front and pi ahead of it
  CHECK(kink_value(fam, -300.0, 0.0) == doctest::Approx(2 * std::numbers::pi));
  CHECK(kink_value(fam, 300.0, 0.0) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("gamma1 pole is reported") {
  const KinkFamily fam{FamilyKind::Gamma1, 0.5, 1.0};
  try {
    kink_value(fam, 0.5, 0.0);  // xi = 1 = r0
    FAIL("expected PoleError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleError);
  }
  ModelParams p = model(1.0);
  CHECK_THROWS_AS(neumann_data_from(fam, p), Error);
  CHECK_NOTHROW(neumann_data_from(KinkFamily{FamilyKind::Gamma1, 0.5, -10.0}, p));
}

TEST_CASE("every family solves the damped hyperbolic equation") {
  CHECK(max_residual({FamilyKind::Basic, 0.5, 0.0}, model(0.0)) < 1e-6);
  CHECK(max_residual({FamilyKind::Gamma0, 0.5, 1.0}, model(0.0)) < 1e-6);
  CHECK(max_residual({FamilyKind::Gamma1, 0.5, -10.0}, model(1.0)) < 1e-6);
}

TEST_CASE("residual detects a wrong solution") {
  const KinkFamily fam{FamilyKind::Basic, 0.5, 0.0};
  ModelParams p = model(0.0);
  p.alpha = 0.7;  // the kink with alpha = 0.5 is not a solution here
  CHECK(max_residual(fam, p) > 1e-2);
}

TEST_CASE("reduced profile ODE") {
  for (double xi : {-2.0, -0.5, 0.3, 1.7}) {
    CHECK(std::abs(ode_rhs_check({FamilyKind::Gamma0, 0.5, 1.0}, xi)) < 1e-9);
    CHECK(std::abs(ode_rhs_check({FamilyKind::Gamma1, 0.5, -10.0}, xi)) < 1e-9);
  }
  CHECK_THROWS_AS(ode_rhs_check({FamilyKind::Basic, 0.5, 0.0}, 0.0), Error);
  try {
    ode_rhs_check({FamilyKind::Gamma0, 0.5, 0.0}, 0.0);  // f == 0 is an equilibrium
    FAIL("expected DenominatorZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DenominatorZero);
  }
}

TEST_CASE("U_xxt of the basic kink") {
  CHECK(u_xxt_basic(0.5, 0.0, 0.0) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(std::isfinite(u_xxt_basic(0.5, 1000.0, 0.0)));
  CHECK(u_xxt_basic(0.5, 1000.0, 0.0) == doctest::Approx(0.0));
  CHECK(boundedness_certificate(0.5) == doctest::Approx(8.0).epsilon(1e-10));
  CHECK(boundedness_certificate(0.25) == doctest::Approx(64.0).epsilon(1e-10));
  CHECK_THROWS_AS(boundedness_certificate(-1.0), Error);
}

TEST_CASE("kink boundary data match the closed form") {
  const KinkFamily fam{FamilyKind::Basic, 0.5, 0.0};
  const ModelParams p = model(0.0);
  const NeumannData d = neumann_data_from(fam, p);
  const double h = 1e-5;
  CHECK(d.h1(1.0) ==
        doctest::Approx((kink_value(fam, 1.0, h) - kink_value(fam, 1.0, -h)) / (2 * h)).epsilon(1e-8));
  CHECK(d.phi0(0.4) ==
        doctest::Approx((kink_value(fam, h, 0.4) - kink_value(fam, -h, 0.4)) / (2 * h)).epsilon(1e-8));
  CHECK_THROWS_AS(neumann_data_from(fam, model(1.0)), Error);  // gamma mismatch
  ModelParams q = model(0.0);
  q.alpha = 0.4;
  CHECK_THROWS_AS(neumann_data_from(fam, q), Error);  // alpha mismatch
}
