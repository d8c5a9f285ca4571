#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sglab/pde_lab.hpp"

using namespace sglab;

namespace {

ModelParams model(double eps, double horizon) {
  ModelParams p;
  p.eps = eps;
  p.horizon = horizon;
  return p;
}

const KinkFamily kBasic{FamilyKind::Basic, 0.5, 0.0};

double max_abs(const Field& f) {
  double m = 0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_diff(const Field& a, const Field& b) { return max_abs(remainder_field(a, b)); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("memory coefficients") {
  const MemoryParams m = MemoryParams::from(model(0.1, 1.0));
  CHECK(m.a_coef == doctest::Approx(-9.5));
  CHECK(m.delta == doctest::Approx(95.0));
  CHECK(m.beta == doctest::Approx(10.0));
  CHECK_THROWS_AS(MemoryParams::from(model(0.0, 1.0)), Error);
}

TEST_CASE("the zero state is an equilibrium of every solver") {
  const ModelParams p = model(0.1, 1.0);
  const Grid g = Grid::make(p.ell, 1.0, 33, 32);
  const NeumannData d = constant_data(0.0);
  CHECK(max_abs(solve_hyperbolic(p, d, g)) == 0.0);
  CHECK(max_abs(solve_parabolic(p, d, g)) == 0.0);
  CHECK(max_abs(solve_memory(p, d, g)) == 0.0);
}

TEST_CASE("hyperbolic solver tracks the kink") {
  const ModelParams p = model(0.1, 2.0);
  const Grid g = Grid::make(p.ell, 2.0, 129, 256);
  const Field U = solve_hyperbolic(p, neumann_data_from(kBasic, p), g);
  const Field ex = sample(g, [](double x, double t) { return kink_value(kBasic, x, t); });
  CHECK(max_diff(U, ex) < 2e-3);
}

TEST_CASE("cfl and divergence guards") {
  const ModelParams p = model(0.1, 2.0);
  const NeumannData d = neumann_data_from(kBasic, p);
  const Grid coarse_dt = Grid::make(p.ell, 2.0, 129, 20);
  CHECK(code_of([&] { solve_hyperbolic(p, d, coarse_dt); }) == ErrorCode::CflViolation);
  CHECK(code_of([&] { solve_parabolic(p, d, coarse_dt); }) == ErrorCode::CflViolation);
  SolverOptions loose;
  loose.enforce_cfl = false;
  CHECK_NOTHROW(solve_parabolic(p, d, coarse_dt, loose));

  SolverOptions tight;
  tight.divergence_limit = 1.0;  // the kink exceeds 1 on the left
  const Grid g = Grid::make(p.ell, 2.0, 33, 64);
  CHECK(code_of([&] { solve_hyperbolic(p, d, g, tight); }) == ErrorCode::Divergence);
  CHECK(code_of([&] { solve_parabolic(p, d, g, tight); }) == ErrorCode::Divergence);

  const Grid wrong_len = Grid::make(2.0, 2.0, 33, 64);
  CHECK(code_of([&] { solve_parabolic(p, d, wrong_len); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("damped energy does not grow") {
  // zero flux, gamma = 0: E = int u_t^2/2 + u_x^2/2 + 1 - cos u decays
  ModelParams p = model(0.1, 4.0);
  NeumannData d = constant_data(0.0);
  d.h0 = [&](double x) { return 0.5 * std::cos(x); };
  const Grid g = Grid::make(p.ell, 4.0, 129, 256);
  auto energy = [&](const Field& u, std::size_t k) {
    double e = 0;
    for (std::size_t i = 0; i + 1 < g.nx; ++i) {
      const double ux = (u.at(i + 1, k) - u.at(i, k)) / g.dx;
      const double ut = 0.5 * (u.at(i, k + 1) - u.at(i, k - 1) + u.at(i + 1, k + 1) -
                               u.at(i + 1, k - 1)) / (2 * g.dt);
      const double um = 0.5 * (u.at(i, k) + u.at(i + 1, k));
      e += g.dx * (0.5 * ut * ut + 0.5 * ux * ux + 1 - std::cos(um));
    }
    return e;
  };
  for (const Field& u : {solve_hyperbolic(p, d, g), solve_parabolic(p, d, g)}) {
    double prev = energy(u, 1);
    for (std::size_t k = 32; k < g.nt; k += 32) {
      const double e = energy(u, k);
      CHECK(e <= prev * (1 + 1e-3));
      prev = e;
    }
    CHECK(energy(u, g.nt - 1) < 0.8 * energy(u, 1));
  }
}

TEST_CASE("small eps: parabolic approaches hyperbolic") {
  const ModelParams p = model(1e-8, 2.0);
  const NeumannData d = neumann_data_from(kBasic, p);
  const Grid g = Grid::make(p.ell, 2.0, 129, 256);
  CHECK(max_diff(solve_parabolic(p, d, g), solve_hyperbolic(p, d, g)) < 2e-3);
}

TEST_CASE("parabolic solver honours the boundary flux") {
  const ModelParams p = model(0.1, 2.0);
  const NeumannData d = neumann_data_from(kBasic, p);
  const Grid g = Grid::make(p.ell, 2.0, 257, 512);
  const Field u = solve_parabolic(p, d, g);
  const std::size_t k = g.nt, n = g.nx - 1;
  const double left = (-3 * u.at(0, k) + 4 * u.at(1, k) - u.at(2, k)) / (2 * g.dx);
  const double right = (3 * u.at(n, k) - 4 * u.at(n - 1, k) + u.at(n - 2, k)) / (2 * g.dx);
  CHECK(left == doctest::Approx(d.phi0(g.horizon)).epsilon(2e-3).scale(1e-3));
  CHECK(right == doctest::Approx(d.phi1(g.horizon)).epsilon(2e-3).scale(1e-3));
}

TEST_CASE("corner defect of kink data is zero") {
  const ModelParams p = model(0.1, 1.0);
  CHECK(corner_defect(neumann_data_from(kBasic, p), p.ell) < 1e-5);
  NeumannData d = constant_data(0.0);
  d.phi0 = [](double) { return 1.0; };
  CHECK(corner_defect(d, p.ell) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("implied initial velocity of the memory form") {
  const ModelParams p = model(0.1, 1.0);
  const SpaceFn v = implied_initial_velocity(p, [](double x) { return std::cos(x); });
  // eps h0'' - a h0 with a = alpha - 1/eps
  CHECK(v(0.3) == doctest::Approx((-0.1 + 9.5) * std::cos(0.3)).epsilon(1e-5));
}

TEST_CASE("memory form matches the full equation with the implied velocity") {
  const ModelParams p = model(0.1, 1.0);
  NeumannData d = constant_data(0.0);
  d.h0 = [](double x) { return 0.1 * std::cos(x); };
  const Grid g = Grid::make(p.ell, 1.0, 65, 64);
  const Field mem = solve_memory(p, d, g);
  NeumannData implied = d;
  implied.h1 = implied_initial_velocity(p, d.h0);
  CHECK(max_diff(mem, solve_parabolic(p, implied, g)) < 1e-3);
  CHECK(max_diff(mem, solve_parabolic(p, d, g)) > 1e-2);
}

TEST_CASE("picard remainder") {
  SUBCASE("eps = 0 gives the zero remainder at once") {
    const ModelParams p = model(0.0, 1.0);
    const Grid g = Grid::make(p.ell, 1.0, 17, 16);
    const PicardResult r = picard_remainder(p, basic_kink_reference(g, 0.5), g, {}, 10, 1e-12);
    CHECK(r.iterations == 1);
    CHECK(max_abs(r.d) == 0.0);
  }
  SUBCASE("increments contract") {
    const ModelParams p = model(0.1, 2.0);
    const Grid g = Grid::make(p.ell, 2.0, 33, 32);
    const PicardResult r = picard_remainder(p, basic_kink_reference(g, 0.5), g, {}, 50, 1e-10);
    REQUIRE(r.increments.size() >= 3);
    CHECK(r.modes == 32);
    for (std::size_t i = 1; i < r.increments.size(); ++i)
      CHECK(r.increments[i] < r.increments[i - 1]);
    CHECK(r.increments.back() < 1e-10);
  }
  SUBCASE("iteration budget") {
    const ModelParams p = model(0.1, 2.0);
    const Grid g = Grid::make(p.ell, 2.0, 33, 32);
    CHECK(code_of([&] { picard_remainder(p, basic_kink_reference(g, 0.5), g, {}, 2, 1e-14); }) ==
          ErrorCode::NoConvergence);
  }
}
