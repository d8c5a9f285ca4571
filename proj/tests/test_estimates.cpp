#include <doctest.h>

#include <cmath>

#include "sglab/reports.hpp"

using namespace sglab;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

const KinkFamily kBasic{FamilyKind::Basic, 0.5, 0.0};

}  // namespace

TEST_CASE("gronwall bound") {
  CHECK(gronwall_bound(1.0, 0.0, 1.0, 0.5, 0.25, 0.01) ==
        doctest::Approx(0.1151292546497023).epsilon(1e-13));
  CHECK(code_of([] { gronwall_bound(1.0, 0.0, 1.0, 0.5, 0.5, 0.01); }) == ErrorCode::DomainError);
  CHECK(code_of([] { gronwall_bound(1.0, 0.0, 1.0, 0.5, 0.25, 1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { gronwall_bound(0.0, 0.0, 1.0, 0.5, 0.25, 0.1); }) == ErrorCode::DomainError);
}

TEST_CASE("fit exponent") {
  std::vector<double> e = {0.1, 0.01, 0.001}, v;
  for (double x : e) v.push_back(std::sqrt(x) * std::abs(std::log(x)));
  // numpy polyfit on the same data
  CHECK(fit_exponent(e, v) == doctest::Approx(0.26143937264016875).epsilon(1e-12));
  CHECK(fit_exponent({0.1, 0.2, 0.4}, {0.01, 0.04, 0.16}) == doctest::Approx(2.0));
  CHECK(code_of([] { fit_exponent({0.1, 0.2}, {1, 2}); }) == ErrorCode::DegenerateFit);
  CHECK(code_of([] { fit_exponent({0.1, 0.1, 0.1}, {1, 2, 3}); }) == ErrorCode::DegenerateFit);
  CHECK(code_of([] { fit_exponent({0.1, 0.2, 0.3}, {1, 0, 3}); }) == ErrorCode::DomainError);
}

TEST_CASE("linspace") {
  const auto g = linspace(1, 20, 40);
  CHECK(g.size() == 40);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 20.0);
  CHECK(linspace(2, 3, 1) == std::vector<double>{2.0});
}

TEST_CASE("kernel envelope check") {
  EnvelopeOptions o;
  o.t_grid = linspace(1, 20, 12);
  const EnvelopeReport r = envelope_check(ModelParams{}, o);
  REQUIRE(r.rows.size() == 5);
  CHECK(r.m == doctest::Approx(0.25));
  CHECK(r.m_min == doctest::Approx(0.125));
  CHECK(r.decays);
  CHECK(r.spread >= 1.0);
  CHECK(r.passed == (r.spread <= 10.0));
  for (const auto& row : r.rows) CHECK(row.sup_ratio > 0);

  const Artifact a = make_artifact(r);
  CHECK(a.kind == "envelope");
  CHECK(a.json["per_eps"].size() == 5);
  REQUIRE(a.table("envelope") != nullptr);
  CHECK(a.table("envelope")->rfind("# units:", 0) == 0);

  CHECK(r.spread_abs >= 1.0);
  CHECK(r.spread_abs <= 10.0);
  for (const auto& row : r.rows) CHECK(row.sup_abs_ratio >= row.sup_ratio);

  o.eps_list = {1.5};
  CHECK(code_of([&] { envelope_check(ModelParams{}, o); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("band decay checks") {
  const LemmaReport r = lemma_checks(ModelParams{});
  REQUIRE(r.verdicts.size() == 3);
  for (const auto& row : r.rows) {
    CHECK(row.tail.status == BandStatus::Evaluated);
    CHECK(row.tail.fitted > 0);
    // ell = pi puts mode 1 inside the oscillating band for every eps of the sweep
    CHECK(row.n1 == 1);
    CHECK(row.low.status == BandStatus::SkippedBand);
  }
  CHECK(r.verdicts[1].skipped);
  CHECK(r.verdicts[1].passed);

  LemmaOptions o;
  o.constants.k = 1.6;
  CHECK(code_of([&] { lemma_checks(ModelParams{}, o); }) == ErrorCode::PreconditionViolation);
  CHECK(LemmaConstants{}.rho() == doctest::Approx(0.25));

  const Artifact a = make_artifact(r);
  CHECK(a.json["verdicts"][1]["growth"].is_null());
}

TEST_CASE("low band is evaluated on a long junction") {
  ModelParams p;
  p.ell = 30.0;  // N1 > 1 once ell/(pi eps) (1 - sqrt(1 - alpha eps)) exceeds 1
  LemmaOptions o;
  o.eps_list = {0.2, 0.1};
  const LemmaReport r = lemma_checks(p, o);
  CHECK(r.rows[0].n1 > 1);
  CHECK(r.rows[0].low.status == BandStatus::Evaluated);
  CHECK(r.rows[0].low.fitted > 0);
}

TEST_CASE("scaling parameters") {
  const ScalingParams s;
  CHECK(s.horizon(0.01) == doctest::Approx(1.151292546497023));
  CHECK(s.scale(0.01, 0.5) == doctest::Approx(0.1 * 1.151292546497023));
  CHECK(code_of([] { validate(ScalingParams{0.6}, 0.5); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("boundary-layer sweep") {
  const SweepReport r = boundary_layer_sweep(ModelParams{}, ScalingParams{}, kBasic);
  REQUIRE(r.per_eps.size() == 4);
  CHECK(r.certificate == doctest::Approx(8.0));
  for (std::size_t i = 1; i < r.per_eps.size(); ++i) CHECK(r.per_eps[i].eps < r.per_eps[i - 1].eps);
  for (const auto& pt : r.per_eps) {
    CHECK(pt.change <= 0.05);
    CHECK(pt.window_empty == (pt.horizon <= 1.0));
    CHECK(pt.window_empty == !pt.sup_s.has_value());
    CHECK(pt.sup_s_full > 0);
  }
  // the window [1, T_eps) only exists for eps = 0.01 here, so the gate fails
  CHECK_FALSE(r.window.complete);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.window.fit_error.empty());
  CHECK(r.full.complete);
  CHECK(r.full.strictly_decreasing);
  CHECK(r.full.fitted_exponent.has_value());

  const Artifact a = make_artifact(r);
  CHECK(a.json["per_eps"][0]["sup_S"].is_null());
  CHECK(a.table("sweep")->find("nan") != std::string::npos);
  REQUIRE(a.table("s_profiles") != nullptr);
}

TEST_CASE("sweep errors") {
  GridPolicy gp;
  gp.nx_max = gp.nx0;
  ScalingParams one;
  one.eps_list = {0.01};
  try {
    boundary_layer_sweep(ModelParams{}, one, kBasic, gp);
    FAIL("expected GridNotConverged");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridNotConverged);
    CHECK(std::string(e.what()).find("eps=0.01") != std::string::npos);
  }
  const SweepReport r = boundary_layer_sweep(ModelParams{}, one, kBasic);
  CHECK(r.window.complete);
  CHECK(r.window.fit_error.find("DegenerateFit") == 0);
  CHECK_FALSE(r.window.strictly_decreasing);
  CHECK_FALSE(r.passed);

  CHECK(code_of([&] {
          boundary_layer_sweep(ModelParams{}, one, KinkFamily{FamilyKind::Gamma0, 0.5, 1.0});
        }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("memory experiment") {
  const MemoryReport r = memory_experiment(ModelParams{});
  CHECK(r.velocity_gap > 0.5);
  CHECK(r.agrees_implied);
  CHECK_FALSE(r.agrees_given);
  CHECK(r.diff_given > 10 * r.diff_implied);
  CHECK(r.finding.find("eps h0''") != std::string::npos);
  const Artifact a = make_artifact(r);
  CHECK(a.passed);
  CHECK(a.json["finding"] == r.finding);
  CHECK(code_of([] {
          MemoryExperimentOptions o;
          o.nt = 63;
          memory_experiment(ModelParams{}, o);
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("format_double keeps 17 digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
