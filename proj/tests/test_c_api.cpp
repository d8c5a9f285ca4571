// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "sglab/sglab.h"

namespace {

std::string tmp_path(const char* name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/" + name;
}

}  // namespace

TEST_CASE("status names and the last error") {
  CHECK(std::string(sglab_status_name(SGLAB_OK)) == "Ok");
  CHECK(std::string(sglab_status_name(SGLAB_POLE_ERROR)) == "PoleError");
  sglab_params p = sglab_default_params();
  p.eps = 1.5;
  CHECK(sglab_validate_params(&p, 0) == SGLAB_OK);
  CHECK(sglab_validate_params(&p, 1) == SGLAB_INVALID_ARGUMENT);
  CHECK(std::string(sglab_last_error()).find("eps") != std::string::npos);
  CHECK(sglab_validate_params(nullptr, 0) == SGLAB_INVALID_ARGUMENT);
  CHECK(std::string(sglab_last_error()).find("NULL") != std::string::npos);
}

TEST_CASE("spectral quantities") {
  const sglab_params p = sglab_default_params();
  sglab_mode m;
  REQUIRE(sglab_mode_data(&p, 1, &m) == SGLAB_OK);
  CHECK(m.regime == SGLAB_REGIME_TRIGONOMETRIC);
  CHECK(std::string(sglab_regime_name(m.regime)) == "trigonometric");
  sglab_split s;
  REQUIRE(sglab_regime_split(&p, &s) == SGLAB_OK);
  CHECK(s.defined == 1);
  CHECK(s.n1 == 1);
  CHECK(s.n2 == 19);
  double h = 0;
  REQUIRE(sglab_kernel_mode(&p, 1, 1.0, &h) == SGLAB_OK);
  CHECK(h == doctest::Approx(0.6334636763575264).epsilon(1e-12));
  CHECK(sglab_kernel_mode(&p, 0, 1.0, &h) == SGLAB_PRECONDITION_VIOLATION);

  sglab_series th;
  const sglab_policy pol{1000000, 1e-9};
  REQUIRE(sglab_theta_sum(&p, 0.0, 0.0, 1.0, &pol, &th) == SGLAB_OK);
  CHECK(std::abs(th.value - 0.8630288078025171) <= th.tail + 1e-13);
  const sglab_policy starved{10, 1e-14};
  CHECK(sglab_theta_sum(&p, 0.0, 0.0, 1e-6, &starved, &th) == SGLAB_TAIL_NOT_CONVERGED);

  double t[3] = {1.0, 2.0, 3.0};
  sglab_decay_point pts[3];
  REQUIRE(sglab_decay_profile(&p, t, 3, nullptr, pts) == SGLAB_OK);
  CHECK(pts[0].sum_h > pts[2].sum_h);
}

TEST_CASE("exact solutions") {
  sglab_family_kind k;
  REQUIRE(sglab_family_parse("gamma1", &k) == SGLAB_OK);
  CHECK(k == SGLAB_FAMILY_GAMMA1);
  CHECK(sglab_family_parse("sine", &k) == SGLAB_INVALID_ARGUMENT);
  CHECK(sglab_family_parse(nullptr, &k) == SGLAB_INVALID_ARGUMENT);

  const sglab_family pole{SGLAB_FAMILY_GAMMA1, 0.5, 1.0};
  double v = 0;
  CHECK(sglab_kink_value(&pole, 0.5, 0.0, &v) == SGLAB_POLE_ERROR);

  double cert = 0;
  REQUIRE(sglab_boundedness_certificate(0.5, &cert) == SGLAB_OK);
  CHECK(cert == doctest::Approx(8.0));

  sglab_params p = sglab_default_params();
  p.horizon = 2.0;
  const sglab_family basic{SGLAB_FAMILY_BASIC, 0.5, 0.0};
  double res = 1;
  REQUIRE(sglab_kink_residual(&basic, &p, 0, p.ell, 50, 0, 2, 50, 1e-3, &res) == SGLAB_OK);
  CHECK(res < 1e-6);
}

TEST_CASE("solve, inspect and round-trip a field") {
  sglab_params p = sglab_default_params();
  p.horizon = 1.0;
  const sglab_data data{SGLAB_DATA_KINK, {SGLAB_FAMILY_BASIC, 0.5, 0.0}, 0.0};
  sglab_field* u = nullptr;
  REQUIRE(sglab_solve(&p, &data, 33, 32, SGLAB_SOLVER_PARABOLIC, nullptr, &u) == SGLAB_OK);
  sglab_field* U = nullptr;
  REQUIRE(sglab_exact_field(&data.family, &p, 33, 32, &U) == SGLAB_OK);

  size_t nx = 0, nt = 0;
  double dx = 0, dt = 0;
  REQUIRE(sglab_field_dims(u, &nx, &nt, &dx, &dt) == SGLAB_OK);
  CHECK(nx == 33);
  CHECK(nt == 32);
  double v0 = 0;
  REQUIRE(sglab_field_value(u, 3, 0, &v0) == SGLAB_OK);
  CHECK(sglab_field_data(u)[3] == v0);
  CHECK(sglab_field_value(u, 33, 0, &v0) == SGLAB_INVALID_ARGUMENT);

  sglab_field* d = nullptr;
  REQUIRE(sglab_remainder(u, U, &d) == SGLAB_OK);
  std::vector<double> S(nt + 1);
  REQUIRE(sglab_sup_profile(d, S.data()) == SGLAB_OK);
  CHECK(S[0] == doctest::Approx(0.0).scale(1e-14));
  CHECK(S[nt] > 0);

  const std::string path = tmp_path("c_api_field.csv");
  REQUIRE(sglab_field_write_csv(u, path.c_str(), 1) == SGLAB_OK);
  sglab_field* back = nullptr;
  REQUIRE(sglab_field_read_csv(path.c_str(), &back) == SGLAB_OK);
  CHECK(std::memcmp(sglab_field_data(back), sglab_field_data(u), nx * (nt + 1) * sizeof(double)) == 0);
  std::remove(path.c_str());
  CHECK(sglab_field_read_csv("/nonexistent/dir/f.csv", &back) == SGLAB_IO);

  sglab_field* wrong = nullptr;
  REQUIRE(sglab_exact_field(&data.family, &p, 17, 16, &wrong) == SGLAB_OK);
  sglab_field* none = nullptr;
  CHECK(sglab_remainder(u, wrong, &none) == SGLAB_GRID_MISMATCH);
  CHECK(none == nullptr);

  sglab_field* h = nullptr;
  CHECK(sglab_solve(&p, &data, 33, 4, SGLAB_SOLVER_HYPERBOLIC, nullptr, &h) == SGLAB_CFL_VIOLATION);
  CHECK(h == nullptr);

  for (sglab_field* f : {u, U, d, back, wrong}) sglab_field_free(f);
  sglab_field_free(nullptr);
}

TEST_CASE("picard through the C interface") {
  sglab_params p = sglab_default_params();
  p.horizon = 2.0;
  sglab_field* d = nullptr;
  size_t iters = 0;
  double inc[64];
  REQUIRE(sglab_picard_basic(&p, 33, 32, nullptr, 50, 1e-10, &d, &iters, inc, 64) == SGLAB_OK);
  CHECK(iters >= 3);
  CHECK(inc[1] < inc[0]);
  sglab_field_free(d);
  CHECK(sglab_picard_basic(&p, 33, 32, nullptr, 2, 1e-14, &d, &iters, nullptr, 0) ==
        SGLAB_NO_CONVERGENCE);
}

TEST_CASE("estimates and reports") {
  double g = 0;
  REQUIRE(sglab_gronwall_bound(1, 0, 1, 0.5, 0.25, 0.01, &g) == SGLAB_OK);
  CHECK(g == doctest::Approx(0.1151292546497023));
  const double e[2] = {0.1, 0.2}, v[2] = {1, 2};
  double slope = 0;
  CHECK(sglab_fit_exponent(e, v, 2, &slope) == SGLAB_DEGENERATE_FIT);

  const sglab_params p = sglab_default_params();
  const double eps[2] = {0.1, 0.05};
  const double ts[3] = {1, 5, 10};
  sglab_report* r = nullptr;
  REQUIRE(sglab_envelope_check(&p, {eps, 2}, {ts, 3}, nullptr, 10.0, &r) == SGLAB_OK);
  CHECK(sglab_report_passed(r) == 1);
  const auto j = nlohmann::json::parse(sglab_report_json(r, 0));
  CHECK(j["kind"] == "envelope");
  CHECK(j["per_eps"].size() == 2);
  REQUIRE(sglab_report_table_count(r) == 1);
  CHECK(std::string(sglab_report_table_name(r, 0)) == "envelope");
  CHECK(sglab_report_table(r, "nope") == nullptr);
  CHECK(std::string(sglab_report_json(r, 1)).find("\n  ") != std::string::npos);
  sglab_report_free(r);

  const sglab_family basic{SGLAB_FAMILY_BASIC, 0.5, 0.0};
  sglab_sweep_config cfg = sglab_default_sweep_config();
  CHECK(cfg.nx0 == 65);
  cfg.nx_max = cfg.nx0;
  const double one[1] = {0.01};
  CHECK(sglab_boundary_layer_sweep(&p, {one, 1}, &basic, &cfg, &r) == SGLAB_GRID_NOT_CONVERGED);
  CHECK(std::string(sglab_last_error()).find("eps=0.01") != std::string::npos);

  REQUIRE(sglab_memory_experiment(&p, 33, 32, 0.1, &r) == SGLAB_OK);
  CHECK(sglab_report_table(r, "memory") != nullptr);
  sglab_report_free(r);
}
