#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "sglab/field.hpp"

using namespace sglab;

TEST_CASE("grid construction") {
  const Grid g = Grid::make(2.0, 1.0, 5, 4);
  CHECK(g.dx == doctest::Approx(0.5));
  CHECK(g.dt == doctest::Approx(0.25));
  CHECK(g.levels() == 5);
  CHECK(g.x(4) == doctest::Approx(2.0));
  CHECK_THROWS_AS(Grid::make(0.0, 1.0, 5, 4), Error);
  CHECK_THROWS_AS(Grid::make(1.0, 1.0, 2, 4), Error);
  CHECK_THROWS_AS(Grid::make(1.0, 1.0, 5, 0), Error);
}

TEST_CASE("csv round trip is exact for random fields") {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<std::size_t> nxd(3, 40), ntd(1, 30);
  std::uniform_real_distribution<double> len(0.1, 10.0), val(-1e3, 1e3);
  for (int trial = 0; trial < 50; ++trial) {
    const Grid g = Grid::make(len(rng), len(rng), nxd(rng), ntd(rng));
    Field f(g);
    for (std::size_t k = 0; k < g.levels(); ++k)
      for (std::size_t i = 0; i < g.nx; ++i) f.at(i, k) = val(rng) * std::pow(10.0, trial % 7 - 3);
    std::stringstream ss;
    write_csv(f, ss);
    const Field back = read_csv(ss);
    REQUIRE(back.grid().nx == g.nx);
    REQUIRE(back.grid().nt == g.nt);
    CHECK(back.grid().ell == g.ell);
    bool exact = true;
    for (std::size_t n = 0; n < f.values().size(); ++n)
      exact = exact && back.values()[n] == f.values()[n];
    CHECK(exact);
  }
}

TEST_CASE("csv subsampling keeps the final level") {
  Field f(Grid::make(1.0, 1.0, 4, 6));
  for (std::size_t k = 0; k <= 6; ++k) f.at(2, k) = static_cast<double>(k);
  std::stringstream ss;
  write_csv(f, ss, 3);
  const Field back = read_csv(ss);
  CHECK(back.grid().nt == 2);
  CHECK(back.at(2, 2) == 6.0);

  std::stringstream uneven;
  write_csv(f, uneven, 4);  // levels 0, 4, 6
  CHECK_THROWS_AS(read_csv(uneven), Error);
}

TEST_CASE("csv reader rejects malformed input") {
  std::stringstream empty("x,t=0,t=1\n0,1,2\n");
  CHECK_THROWS_AS(read_csv(empty), Error);
  Field f(Grid::make(1.0, 1.0, 3, 2));
  std::stringstream ss;
  write_csv(f, ss);
  std::string text = ss.str();
  text.resize(text.size() - 10);
  std::stringstream cut(text);
  CHECK_THROWS_AS(read_csv(cut), Error);
  std::string bad = ss.str();
  bad.replace(bad.rfind('0'), 1, "q");
  std::stringstream badnum(bad);
  CHECK_THROWS_AS(read_csv(badnum), Error);
}

TEST_CASE("remainder, sup profile and coarse comparison") {
  const Grid g = Grid::make(1.0, 1.0, 5, 4);
  const Field a = sample(g, [](double x, double t) { return x + t; });
  const Field b = sample(g, [](double x, double) { return x; });
  const Field d = remainder_field(a, b);
  const auto prof = sup_profile(d);
  REQUIRE(prof.size() == 5);
  CHECK(prof[4].value == doctest::Approx(1.0));
  CHECK(prof[2].t == doctest::Approx(0.5));

  CHECK_THROWS_AS(remainder_field(a, Field(Grid::make(1.0, 1.0, 5, 8))), Error);

  const Grid fine = Grid::make(1.0, 1.0, 9, 8);
  const Field af = sample(fine, [](double x, double t) { return x + t + 1e-3; });
  CHECK(max_diff_on_coarse(a, af) == doctest::Approx(1e-3));
  CHECK_THROWS_AS(max_diff_on_coarse(a, Field(Grid::make(1.0, 1.0, 8, 8))), Error);
}
