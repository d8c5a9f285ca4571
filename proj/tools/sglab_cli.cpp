// Command-line front end. Talks to the library only through sglab.h.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sglab/sglab.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kValidation = 3, kNumerical = 4 };

struct Failure {
  sglab_status status;
  std::string message;
};

void check(sglab_status s) {
  if (s != SGLAB_OK) throw Failure{s, sglab_last_error()};
}

int exit_code(sglab_status s) {
  switch (s) {
    case SGLAB_INVALID_ARGUMENT:
    case SGLAB_PRECONDITION_VIOLATION:
    case SGLAB_POLE_ERROR:
    case SGLAB_CFL_VIOLATION:
    case SGLAB_GRID_MISMATCH:
    case SGLAB_DOMAIN_ERROR:
    case SGLAB_IO:
      return kValidation;
    default:
      return kNumerical;
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RAII holders for the opaque handles
struct FieldPtr {
  sglab_field* p = nullptr;
  ~FieldPtr() { sglab_field_free(p); }
};
struct ReportPtr {
  sglab_report* p = nullptr;
  ~ReportPtr() { sglab_report_free(p); }
};

struct Output {
  std::string dir = ".";

  fs::path path(const std::string& name) const { return fs::path(dir) / name; }

  void prepare() const {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Failure{SGLAB_IO, "cannot create output directory " + dir + ": " + ec.message()};
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream os(path(name), std::ios::binary);
    os << text;
    if (!os) throw Failure{SGLAB_IO, "cannot write " + path(name).string()};
  }

  void write_report(const sglab_report* r, const std::string& json_name) const {
    write(json_name, std::string(sglab_report_json(r, 1)) + "\n");
    for (size_t i = 0; i < sglab_report_table_count(r); ++i) {
      const std::string name = sglab_report_table_name(r, i);
      write(name + ".csv", sglab_report_table(r, name.c_str()));
    }
  }
};

json params_json(const sglab_params& p) {
  return {{"ell", p.ell}, {"alpha", p.alpha}, {"eps", p.eps}, {"gamma", p.gamma},
          {"horizon", p.horizon}};
}

void add_model(CLI::App* cmd, sglab_params& p, bool required) {
  auto* ell = cmd->add_option("--ell", p.ell, "junction length");
  auto* alpha = cmd->add_option("--alpha", p.alpha, "dissipation coefficient");
  auto* eps = cmd->add_option("--eps", p.eps, "coefficient of u_xxt");
  if (required) {
    ell->required();
    alpha->required();
    eps->required();
  } else {
    ell->capture_default_str();
    alpha->capture_default_str();
    eps->capture_default_str();
  }
  cmd->add_option("--gamma", p.gamma, "constant forcing")->capture_default_str();
}

sglab_sweep_list as_list(const std::vector<double>& v) { return {v.data(), v.size()}; }

std::vector<double> grid_points(double a, double b, size_t n) {
  if (n < 1) throw Failure{SGLAB_INVALID_ARGUMENT, "need at least one time point"};
  if (n == 1) return {a};
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = a + (b - a) * double(i) / double(n - 1);
  out.back() = b;
  return out;
}

sglab_family_kind parse_family(const std::string& name) {
  sglab_family_kind k;
  check(sglab_family_parse(name.c_str(), &k));
  return k;
}

// ---------------------------------------------------------------------------

struct KernelCmd {
  sglab_params p = sglab_default_params();
  double tmin = 1, tmax = 20;
  size_t points = 40;
  size_t modes = 0;
  sglab_policy policy{10'000'000, 1e-8};
  size_t probes = 0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("kernel", "mode table, kernel sums and decay envelope");
    add_model(c, p, true);
    c->add_option("--tmin", tmin, "first time (>= 1)")->capture_default_str();
    c->add_option("--tmax", tmax, "last time")->capture_default_str();
    c->add_option("--t-points", points, "number of times")->capture_default_str();
    c->add_option("--modes", modes, "rows of modes.csv (0: twice the band end)");
    c->add_option("--max-modes", policy.max_modes, "series cap")->capture_default_str();
    c->add_option("--tail-tol", policy.tail_tol, "certified tail tolerance")->capture_default_str();
    c->add_option("--probes", probes, "random theta_sum probes written to probes.csv")
        ->capture_default_str();
  }

  void run(const Output& out, uint64_t seed) {
    check(sglab_validate_params(&p, 1));
    if (!(tmin >= 1) || !(tmax >= tmin))
      throw Failure{SGLAB_PRECONDITION_VIOLATION, "need 1 <= tmin <= tmax"};
    out.prepare();
    sglab_split split;
    check(sglab_regime_split(&p, &split));
    uint64_t start = 0;
    check(sglab_tail_start(&p, &start));
    size_t rows = modes ? modes : (split.defined ? std::max<size_t>(2 * split.n2, 20) : 50);

    std::ostringstream mcsv;
    mcsv << "# units: gamma_n in 1/length, h_n and freq in 1/time, disc in 1/time^2\n"
         << "n,gamma_n,h_n,disc,regime,freq\n";
    size_t counts[3] = {0, 0, 0};
    for (size_t n = 1; n <= rows; ++n) {
      sglab_mode m;
      check(sglab_mode_data(&p, n, &m));
      ++counts[m.regime];
      mcsv << n << ',' << num(m.gamma_n) << ',' << num(m.h_n) << ',' << num(m.disc) << ','
           << sglab_regime_name(m.regime) << ',' << num(m.freq) << '\n';
    }
    out.write("modes.csv", mcsv.str());

    const auto ts = grid_points(tmin, tmax, points);
    std::vector<sglab_decay_point> pts(ts.size());
    check(sglab_decay_profile(&p, ts.data(), ts.size(), &policy, pts.data()));
    std::ostringstream kcsv;
    kcsv << "# units: t in time units; sums and envelopes dimensionless\n"
         << "t,sum_h,tail,modes,envelope,ratio,envelope_min,ratio_min\n";
    for (const auto& d : pts)
      kcsv << num(d.t) << ',' << num(d.sum_h) << ',' << num(d.tail) << ',' << d.modes << ','
           << num(d.envelope) << ',' << num(d.ratio) << ',' << num(d.envelope_min) << ','
           << num(d.ratio_min) << '\n';
    out.write("kernel.csv", kcsv.str());

    double m = 0, m_min = 0;
    check(sglab_envelope_rate(&p, 0, &m));
    check(sglab_envelope_rate(&p, 1, &m_min));
    json split_json = {{"defined", split.defined != 0}};
    if (split.defined)
      split_json.update({{"N1", split.n1}, {"N2", split.n2}, {"lower", split.lower},
                         {"upper", split.upper}});
    const json summary = {
        {"params", params_json(p)},
        {"split", split_json},
        {"tail_start", start},
        {"m", m},
        {"m_min", m_min},
        {"listed_modes", rows},
        {"regime_counts", {{"hyperbolic", counts[0]}, {"trigonometric", counts[1]},
                           {"degenerate", counts[2]}}},
        {"policy", {{"max_modes", policy.max_modes}, {"tail_tol", policy.tail_tol}}},
        {"seed", seed}};
    out.write("regime.json", summary.dump(2) + "\n");

    if (probes > 0) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> pos(0.0, p.ell), time(tmin, tmax);
      std::ostringstream pcsv;
      pcsv << "# units: x and xi in length units, t in time units\n"
           << "x,xi,t,theta,tail,modes\n";
      for (size_t i = 0; i < probes; ++i) {
        const double x = pos(rng), xi = pos(rng), t = time(rng);
        sglab_series s;
        check(sglab_theta_sum(&p, x, xi, t, &policy, &s));
        pcsv << num(x) << ',' << num(xi) << ',' << num(t) << ',' << num(s.value) << ','
             << num(s.tail) << ',' << s.modes << '\n';
      }
      out.write("probes.csv", pcsv.str());
    }
    std::cout << "kernel: " << rows << " modes, " << ts.size() << " times written to "
              << out.dir << "\n";
  }
};

// ---------------------------------------------------------------------------

struct SolveCmd {
  sglab_params p{std::numbers::pi, 0.5, 0.1, 0.0, 2.0};
  std::string solver = "parabolic";
  std::string data = "kink";
  std::string family = "basic";
  double r0 = 0;
  double value = std::numbers::pi;
  size_t nx = 65, nt = 64, save_every = 1;
  std::string name;
  bool no_cfl = false;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("solve", "solve one initial-boundary problem");
    c->add_option("--solver", solver, "parabolic, hyperbolic or memory")
        ->check(CLI::IsMember({"parabolic", "hyperbolic", "memory"}))
        ->capture_default_str();
    add_model(c, p, false);
    c->add_option("--horizon", p.horizon, "final time")->capture_default_str();
    c->add_option("--nx", nx, "space nodes")->capture_default_str();
    c->add_option("--nt", nt, "time steps")->capture_default_str();
    c->add_option("--data", data, "kink or constant")
        ->check(CLI::IsMember({"kink", "constant"}))
        ->capture_default_str();
    c->add_option("--family", family, "gamma0, gamma1 or basic")->capture_default_str();
    c->add_option("--r0", r0, "family parameter r0")->capture_default_str();
    c->add_option("--value", value, "h0 for constant data")->capture_default_str();
    c->add_option("--save-every", save_every, "write every n-th level")->capture_default_str();
    c->add_option("--name", name, "field file is field_<name>.csv (default: solver)");
    c->add_flag("--no-cfl", no_cfl, "drop the dt <= dx guard of the implicit schemes");
  }

  void run(const Output& out) {
    check(sglab_validate_params(&p, 0));
    sglab_solver kind;
    check(sglab_solver_parse(solver.c_str(), &kind));
    sglab_data d{};
    d.kind = data == "kink" ? SGLAB_DATA_KINK : SGLAB_DATA_CONSTANT;
    d.family = {parse_family(family), p.alpha, r0};
    d.value = value;
    sglab_solve_options opts = sglab_default_solve_options();
    opts.enforce_cfl = no_cfl ? 0 : 1;
    double defect = 0;
    check(sglab_corner_defect(&p, &d, &defect));
    out.prepare();

    FieldPtr u;
    check(sglab_solve(&p, &d, nx, nt, kind, &opts, &u.p));
    size_t gx, gt;
    double dx, dt;
    check(sglab_field_dims(u.p, &gx, &gt, &dx, &dt));
    const std::string file = "field_" + (name.empty() ? solver : name) + ".csv";
    check(sglab_field_write_csv(u.p, out.path(file).c_str(), save_every));

    json diag = {{"corner_defect", defect}};
    std::vector<double> prof(gt + 1);
    check(sglab_sup_profile(u.p, prof.data()));
    diag["final_sup_abs"] = prof.back();
    if (d.kind == SGLAB_DATA_KINK) {
      FieldPtr exact, diff;
      check(sglab_exact_field(&d.family, &p, nx, nt, &exact.p));
      check(sglab_remainder(u.p, exact.p, &diff.p));
      check(sglab_sup_profile(diff.p, prof.data()));
      double m = 0;
      for (double v : prof) m = std::max(m, v);
      diag["max_diff_vs_kink"] = m;
    }
    if (nx % 2 == 1 && nt % 2 == 0 && nx >= 5) {
      FieldPtr coarse;
      check(sglab_solve(&p, &d, (nx - 1) / 2 + 1, nt / 2, kind, &opts, &coarse.p));
      double e = 0;
      check(sglab_max_diff_on_coarse(coarse.p, u.p, &e));
      diag["self_convergence_estimate"] = e;
    }
    json data_json = {{"kind", data}};
    if (data == "kink")
      data_json.update({{"family", family}, {"r0", r0}});
    else
      data_json["value"] = value;
    const json meta = {{"solver", solver},
                       {"params", params_json(p)},
                       {"grid", {{"nx", gx}, {"nt", gt}, {"dx", dx}, {"dt", dt}}},
                       {"data", data_json},
                       {"enforce_cfl", !no_cfl},
                       {"save_every", save_every},
                       {"field_file", file},
                       {"diagnostics", diag}};
    out.write("run.json", meta.dump(2) + "\n");
    std::cout << "solve: " << solver << " on " << gx << "x" << gt << " written to "
              << out.path(file).string() << "\n";
  }
};

// ---------------------------------------------------------------------------

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

struct SweepCmd {
  sglab_params p{std::numbers::pi, 0.5, 0.1, 0.0, 1.0};
  std::vector<double> eps = {0.1, 0.05, 0.02, 0.01};
  std::string family = "basic";
  sglab_sweep_config cfg = sglab_default_sweep_config();
  double tmin = 1, tmax = 20;
  size_t points = 40;
  double uniformity = 10;
  sglab_policy policy{10'000'000, 1e-8};

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("sweep", "boundary-layer scaling and kernel envelope gates");
    c->add_option("--ell", p.ell, "junction length")->capture_default_str();
    c->add_option("--alpha", p.alpha, "dissipation coefficient")->capture_default_str();
    c->add_option("--eps-list", eps, "comma separated eps values")
        ->delimiter(',')
        ->capture_default_str();
    c->add_option("--k", cfg.k, "exponent parameter, 0 < k < alpha")->capture_default_str();
    c->add_option("--window-start", cfg.window_start, "start of the gated window")
        ->capture_default_str();
    c->add_option("--family", family, "kink family of the data")->capture_default_str();
    c->add_option("--nx0", cfg.nx0, "first grid")->capture_default_str();
    c->add_option("--nx-max", cfg.nx_max, "refinement budget")->capture_default_str();
    c->add_option("--courant", cfg.courant, "dt / dx")->capture_default_str();
    c->add_option("--stabilization", cfg.stabilization, "relative sup_S change accepted")
        ->capture_default_str();
    c->add_option("--ratio-limit", cfg.ratio_limit, "max/min bound ratio accepted")
        ->capture_default_str();
    c->add_option("--tmin", tmin, "envelope check: first time")->capture_default_str();
    c->add_option("--tmax", tmax, "envelope check: last time")->capture_default_str();
    c->add_option("--t-points", points, "envelope check: number of times")
        ->capture_default_str();
    c->add_option("--uniformity", uniformity, "envelope check: spread accepted")
        ->capture_default_str();
  }

  void run(const Output& out) {
    for (double e : eps) {
      sglab_params q = p;
      q.eps = e;
      check(sglab_validate_params(&q, 1));
    }
    const sglab_family fam{parse_family(family), p.alpha, 0.0};
    out.prepare();
    const auto ts = grid_points(tmin, tmax, points);

    ReportPtr env;
    check(sglab_envelope_check(&p, as_list(eps), as_list(ts), &policy, uniformity, &env.p));
    out.write_report(env.p, "envelope_report.json");

    ReportPtr bl;
    check(sglab_boundary_layer_sweep(&p, as_list(eps), &fam, &cfg, &bl.p));
    out.write_report(bl.p, "sweep_report.json");

    const json je = json::parse(sglab_report_json(env.p, 0));
    const json jb = json::parse(sglab_report_json(bl.p, 0));
    auto show = [](const json& v) { return v.is_null() ? std::string("n/a") : num(v.get<double>()); };
    std::printf("%-34s %-24s %s\n", "gate", "statistic", "verdict");
    std::printf("%-34s %-24s %s\n", "kernel envelope, m as printed",
                ("spread=" + show(je["spread"])).c_str(), verdict(je["passed"]));
    std::printf("%-34s %-24s %s\n", "kernel envelope, m with min",
                ("spread=" + show(je["spread_min"])).c_str(), verdict(je["passed_min"]));
    const json& w = jb["window"];
    std::printf("%-34s %-24s %s\n", "remainder bound ratio",
                ("spread=" + show(w["ratio_spread"])).c_str(), verdict(w["passed"]));
    for (const auto& pt : jb["per_eps"])
      std::printf("  eps=%-8g sup_S=%-22s ratio=%s%s\n", pt["eps"].get<double>(),
                  show(pt["sup_S"]).c_str(), show(pt["ratio"]).c_str(),
                  pt["window_empty"].get<bool>() ? "  (window empty)" : "");
    if (w["fit_error"].is_null())
      std::printf("%-34s %-24s %s\n", "regression slope", show(w["fitted_exponent"]).c_str(),
                  "info");
    else
      std::printf("%-34s %s\n", "regression slope", w["fit_error"].get<std::string>().c_str());
    const json& f = jb["full_window"];
    std::printf("%-34s %-24s %s\n", "remainder on (0, T_eps] (info)",
                ("spread=" + show(f["ratio_spread"])).c_str(), verdict(f["passed"]));
  }
};

// ---------------------------------------------------------------------------

struct LemmaCmd {
  sglab_params p{std::numbers::pi, 0.5, 0.1, 0.0, 1.0};
  std::vector<double> eps = {0.2, 0.1, 0.05, 0.02, 0.01};
  double tmin = 1, tmax = 5;
  size_t points = 17;
  sglab_lemma_constants c{0.5, 0.25, 1.25};
  uint64_t tail_modes = 10'000;
  double uniformity = 10;

  void add(CLI::App& app) {
    auto* s = app.add_subcommand("lemma", "band-wise decay inequalities");
    s->add_option("--ell", p.ell, "junction length")->capture_default_str();
    s->add_option("--alpha", p.alpha, "dissipation coefficient")->capture_default_str();
    s->add_option("--eps-list", eps, "comma separated eps values")
        ->delimiter(',')
        ->capture_default_str();
    s->add_option("--tmin", tmin, "first time (>= 1)")->capture_default_str();
    s->add_option("--tmax", tmax, "last time")->capture_default_str();
    s->add_option("--t-points", points, "number of times")->capture_default_str();
    s->add_option("--eta", c.eta, "0 < eta < 1")->capture_default_str();
    s->add_option("--h-exp", c.h, "0 < h < 1/2")->capture_default_str();
    s->add_option("--k-exp", c.k, "1 < k < 3/2")->capture_default_str();
    s->add_option("--tail-modes", tail_modes, "modes summed above N2")->capture_default_str();
    s->add_option("--uniformity", uniformity, "growth accepted")->capture_default_str();
  }

  void run(const Output& out) {
    for (double e : eps) {
      sglab_params q = p;
      q.eps = e;
      check(sglab_validate_params(&q, 1));
    }
    out.prepare();
    const auto ts = grid_points(tmin, tmax, points);
    ReportPtr r;
    check(sglab_lemma_checks(&p, as_list(eps), as_list(ts), &c, tail_modes, uniformity, &r.p));
    out.write_report(r.p, "lemma_report.json");
    const json j = json::parse(sglab_report_json(r.p, 0));
    for (const auto& v : j["verdicts"]) {
      const std::string name = v["name"];
      if (v["skipped"].get<bool>())
        std::printf("%-18s SkippedBand\n", name.c_str());
      else
        std::printf("%-18s growth=%-24s %s\n", name.c_str(), num(v["growth"]).c_str(),
                    verdict(v["passed"]));
    }
  }
};

// ---------------------------------------------------------------------------

struct MemoryCmd {
  sglab_params p{std::numbers::pi, 0.5, 0.1, 0.0, 1.0};
  size_t nx = 65, nt = 64;
  double amplitude = 0.1;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("memory", "integro-differential form against the full equation");
    add_model(c, p, false);
    c->add_option("--horizon", p.horizon, "final time")->capture_default_str();
    c->add_option("--nx", nx, "space nodes (odd)")->capture_default_str();
    c->add_option("--nt", nt, "time steps (even)")->capture_default_str();
    c->add_option("--amplitude", amplitude, "h0 = amplitude cos(pi x / ell)")
        ->capture_default_str();
  }

  void run(const Output& out) {
    check(sglab_validate_params(&p, 1));
    out.prepare();
    ReportPtr r;
    check(sglab_memory_experiment(&p, nx, nt, amplitude, &r.p));
    out.write_report(r.p, "memory_report.json");
    const json j = json::parse(sglab_report_json(r.p, 0));
    std::cout << j["finding"].get<std::string>() << "\n";
  }
};

// ---------------------------------------------------------------------------

struct CertifyCmd {
  sglab_params p{std::numbers::pi, 0.5, 0.0, 0.0, 2.0};
  std::string family = "basic";
  double r0 = 0;
  size_t nx = 50, nt = 50;
  double h_fd = 1e-3;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("certify", "residual certificate of an exact solution");
    c->add_option("--family", family, "gamma0, gamma1 or basic")->capture_default_str();
    c->add_option("--alpha", p.alpha, "dissipation coefficient")->capture_default_str();
    c->add_option("--r0", r0, "family parameter r0")->capture_default_str();
    c->add_option("--ell", p.ell, "junction length")->capture_default_str();
    c->add_option("--horizon", p.horizon, "final time")->capture_default_str();
    c->add_option("--nx", nx, "evaluation points in x")->capture_default_str();
    c->add_option("--nt", nt, "evaluation points in t")->capture_default_str();
    c->add_option("--h-fd", h_fd, "finite-difference step")->capture_default_str();
  }

  void run(const Output& out) {
    const sglab_family fam{parse_family(family), p.alpha, r0};
    check(sglab_family_gamma(fam.kind, &p.gamma));
    check(sglab_validate_params(&p, 0));
    double res = 0;
    check(sglab_kink_residual(&fam, &p, 0.0, p.ell, nx, 0.0, p.horizon, nt, h_fd, &res));
    json j = {{"family", family}, {"r0", r0}, {"params", params_json(p)},
              {"grid", {{"nx", nx}, {"nt", nt}}}, {"h_fd", h_fd}, {"max_residual", res}};
    if (fam.kind == SGLAB_FAMILY_BASIC) {
      double b = 0;
      check(sglab_boundedness_certificate(p.alpha, &b));
      j["sup_u_xxt"] = b;
    }
    out.prepare();
    out.write("certificate.json", j.dump(2) + "\n");
    std::cout << "max |residual| = " << num(res) << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sglab: damped sine-Gordon experiments"};
  app.set_config("--config", "", "INI file; [section] names a subcommand");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  Output out;
  uint64_t seed = 1;
  app.add_option("--output-dir", out.dir, "directory for output files")
      ->envname("SGLAB_OUTPUT_DIR")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized probe points")->capture_default_str();

  KernelCmd kernel;
  SolveCmd solve;
  SweepCmd sweep;
  LemmaCmd lemma;
  MemoryCmd memory;
  CertifyCmd certify;
  kernel.add(app);
  solve.add(app);
  sweep.add(app);
  lemma.add(app);
  memory.add(app);
  certify.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand("kernel")) kernel.run(out, seed);
    if (app.got_subcommand("solve")) solve.run(out);
    if (app.got_subcommand("sweep")) sweep.run(out);
    if (app.got_subcommand("lemma")) lemma.run(out);
    if (app.got_subcommand("memory")) memory.run(out);
    if (app.got_subcommand("certify")) certify.run(out);
  } catch (const Failure& f) {
    std::cerr << "error [" << sglab_status_name(f.status) << "]: " << f.message << "\n";
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}
