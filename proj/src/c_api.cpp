#include "sglab/sglab.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "sglab/reports.hpp"

struct sglab_field {
  sglab::Field field;
};

struct sglab_report {
  sglab::Artifact artifact;
  std::string json_compact, json_pretty;
};

namespace {

thread_local std::string g_last_error;

sglab_status record(sglab_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
sglab_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SGLAB_OK;
  } catch (const sglab::Error& e) {
    return record(static_cast<sglab_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return record(SGLAB_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(SGLAB_INTERNAL, e.what());
  }
}

template <class T>
T& deref(T* p, const char* what) {
  if (!p) sglab::fail(sglab::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
  return *p;
}

const char* cstr(const char* s, const char* what) {
  if (!s) sglab::fail(sglab::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
  return s;
}

sglab::ModelParams convert(const sglab_params* p) {
  const sglab_params& c = deref(p, "params");
  return {c.ell, c.alpha, c.eps, c.gamma, c.horizon};
}

sglab::TruncationPolicy convert(const sglab_policy* p) {
  if (!p) return {};
  return {static_cast<std::size_t>(p->max_modes), p->tail_tol};
}

sglab::KinkFamily convert(const sglab_family* f) {
  const sglab_family& c = deref(f, "family");
  sglab::KinkFamily k;
  switch (c.kind) {
    case SGLAB_FAMILY_GAMMA0: k.family = sglab::FamilyKind::Gamma0; break;
    case SGLAB_FAMILY_GAMMA1: k.family = sglab::FamilyKind::Gamma1; break;
    case SGLAB_FAMILY_BASIC: k.family = sglab::FamilyKind::Basic; break;
    default: sglab::fail(sglab::ErrorCode::InvalidArgument, "unknown family kind");
  }
  k.alpha = c.alpha;
  k.r0 = c.r0;
  return k;
}

sglab::NeumannData convert(const sglab_data* d, const sglab::ModelParams& p) {
  const sglab_data& c = deref(d, "data");
  switch (c.kind) {
    case SGLAB_DATA_KINK: return sglab::neumann_data_from(convert(&c.family), p);
    case SGLAB_DATA_CONSTANT: return sglab::constant_data(c.value);
  }
  sglab::fail(sglab::ErrorCode::InvalidArgument, "unknown data kind");
}

std::vector<double> list_or(sglab_sweep_list l, std::vector<double> fallback) {
  if (!l.values || l.n == 0) return fallback;
  return {l.values, l.values + l.n};
}

sglab_series convert(const sglab::SeriesValue& s) { return {s.value, s.tail, s.modes}; }

void emit(sglab::Field f, sglab_field** out) {
  deref(out, "output handle");
  *out = new sglab_field{std::move(f)};
}

void emit(sglab::Artifact a, sglab_report** out) {
  deref(out, "output handle");
  auto* r = new sglab_report{std::move(a), {}, {}};
  r->json_compact = r->artifact.json.dump();
  r->json_pretty = r->artifact.json.dump(2);
  *out = r;
}

}  // namespace

extern "C" {

const char* sglab_status_name(sglab_status s) {
  if (s == SGLAB_OK) return "Ok";
  if (s == SGLAB_INTERNAL) return "Internal";
  if (s >= SGLAB_INVALID_ARGUMENT && s <= SGLAB_IO)
    return sglab::to_string(static_cast<sglab::ErrorCode>(static_cast<int>(s)));
  return "Unknown";
}

const char* sglab_last_error(void) { return g_last_error.c_str(); }

sglab_params sglab_default_params(void) {
  const sglab::ModelParams p;
  return {p.ell, p.alpha, p.eps, p.gamma_bias, p.horizon};
}

sglab_policy sglab_default_policy(void) {
  const sglab::TruncationPolicy p;
  return {p.max_modes, p.tail_tol};
}

sglab_status sglab_validate_params(const sglab_params* p, int for_estimates) {
  return guarded([&] {
    const auto m = convert(p);
    if (for_estimates)
      sglab::validate_for_estimates(m);
    else
      sglab::validate_for_solver(m);
  });
}

// spectral kernel

const char* sglab_regime_name(sglab_regime r) {
  switch (r) {
    case SGLAB_REGIME_HYPERBOLIC: return sglab::to_string(sglab::Regime::Hyperbolic);
    case SGLAB_REGIME_TRIGONOMETRIC: return sglab::to_string(sglab::Regime::Trigonometric);
    case SGLAB_REGIME_DEGENERATE: return sglab::to_string(sglab::Regime::Degenerate);
  }
  return "unknown";
}

sglab_status sglab_mode_data(const sglab_params* p, uint64_t n, sglab_mode* out) {
  return guarded([&] {
    const auto m = sglab::mode_data(convert(p), n);
    sglab_mode& o = deref(out, "out");
    o.n = m.n;
    o.gamma_n = m.gamma_n;
    o.h_n = m.h_n;
    o.disc = m.disc;
    o.freq = m.freq;
    o.regime = static_cast<sglab_regime>(static_cast<int>(m.regime));
  });
}

sglab_status sglab_regime_split(const sglab_params* p, sglab_split* out) {
  return guarded([&] {
    const auto s = sglab::regime_split(convert(p));
    deref(out, "out") = {s.defined ? 1 : 0, s.n1, s.n2, s.lower, s.upper};
  });
}

sglab_status sglab_kernel_mode(const sglab_params* p, uint64_t n, double t, double* out) {
  return guarded([&] { deref(out, "out") = sglab::kernel_mode(convert(p), n, t); });
}

sglab_status sglab_tail_start(const sglab_params* p, uint64_t* out) {
  return guarded([&] { deref(out, "out") = sglab::tail_start(convert(p)); });
}

sglab_status sglab_tail_bound(const sglab_params* p, uint64_t N, double t, double* out) {
  return guarded([&] { deref(out, "out") = sglab::tail_bound(convert(p), N, t); });
}

sglab_status sglab_modes_needed(const sglab_params* p, double t, const sglab_policy* policy,
                                uint64_t* out) {
  return guarded(
      [&] { deref(out, "out") = sglab::modes_needed(convert(p), t, convert(policy)); });
}

sglab_status sglab_theta_sum(const sglab_params* p, double x, double xi, double t,
                             const sglab_policy* policy, sglab_series* out) {
  return guarded([&] {
    deref(out, "out") = convert(sglab::theta_sum(convert(p), x, xi, t, convert(policy)));
  });
}

sglab_status sglab_kernel_sum(const sglab_params* p, double t, const sglab_policy* policy,
                              uint64_t first, sglab_series* out) {
  return guarded([&] {
    deref(out, "out") = convert(sglab::kernel_sum(convert(p), t, convert(policy), first));
  });
}

sglab_status sglab_green(const sglab_params* p, double x, double xi, double t,
                         const sglab_policy* policy, sglab_series* out) {
  return guarded([&] {
    deref(out, "out") = convert(sglab::green(convert(p), x, xi, t, convert(policy)));
  });
}

sglab_status sglab_envelope_rate(const sglab_params* p, int use_min, double* out) {
  return guarded([&] { deref(out, "out") = sglab::envelope_rate(convert(p), use_min != 0); });
}

sglab_status sglab_decay_profile(const sglab_params* p, const double* t, size_t n,
                                 const sglab_policy* policy, sglab_decay_point* out) {
  return guarded([&] {
    if (n > 0) {
      deref(t, "t");
      deref(out, "out");
    }
    const auto pts = sglab::decay_profile(convert(p), std::vector<double>(t, t + n),
                                          convert(policy));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& d = pts[i];
      out[i] = {d.t, d.sum_h, d.tail, d.modes, d.envelope, d.ratio, d.envelope_min, d.ratio_min};
    }
  });
}

sglab_status sglab_circular_difference(const sglab_params* p, uint64_t n, double t, double* out) {
  return guarded([&] { deref(out, "out") = sglab::circular_difference(convert(p), n, t); });
}

// exact solutions

const char* sglab_family_name(sglab_family_kind k) {
  switch (k) {
    case SGLAB_FAMILY_GAMMA0: return sglab::to_string(sglab::FamilyKind::Gamma0);
    case SGLAB_FAMILY_GAMMA1: return sglab::to_string(sglab::FamilyKind::Gamma1);
    case SGLAB_FAMILY_BASIC: return sglab::to_string(sglab::FamilyKind::Basic);
  }
  return "unknown";
}

sglab_status sglab_family_parse(const char* name, sglab_family_kind* out) {
  return guarded([&] {
    const std::string s = cstr(name, "name");
    for (auto k : {SGLAB_FAMILY_GAMMA0, SGLAB_FAMILY_GAMMA1, SGLAB_FAMILY_BASIC}) {
      if (s == sglab_family_name(k)) {
        deref(out, "out") = k;
        return;
      }
    }
    sglab::fail(sglab::ErrorCode::InvalidArgument,
                "unknown family '" + s + "' (expected gamma0, gamma1 or basic)");
  });
}

sglab_status sglab_family_gamma(sglab_family_kind k, double* out) {
  return guarded([&] {
    const sglab_family f{k, 1.0, 0.0};
    deref(out, "out") = sglab::family_gamma(convert(&f).family);
  });
}

sglab_status sglab_pi_transform(double f, double* out) {
  return guarded([&] { deref(out, "out") = sglab::pi_transform(f); });
}

sglab_status sglab_kink_value(const sglab_family* fam, double x, double t, double* out) {
  return guarded([&] { deref(out, "out") = sglab::kink_value(convert(fam), x, t); });
}

sglab_status sglab_ode_rhs_check(const sglab_family* fam, double xi, double* out) {
  return guarded([&] { deref(out, "out") = sglab::ode_rhs_check(convert(fam), xi); });
}

sglab_status sglab_u_xxt_basic(double alpha, double x, double t, double* out) {
  return guarded([&] { deref(out, "out") = sglab::u_xxt_basic(alpha, x, t); });
}

sglab_status sglab_boundedness_certificate(double alpha, double* out) {
  return guarded([&] { deref(out, "out") = sglab::boundedness_certificate(alpha); });
}

sglab_status sglab_kink_residual(const sglab_family* fam, const sglab_params* p, double x0,
                                 double x1, size_t nx, double t0, double t1, size_t nt,
                                 double h_fd, double* out) {
  return guarded([&] {
    const auto k = convert(fam);
    const auto m = convert(p);
    sglab::validate_family(k, m.gamma_bias);
    const auto u = [k](double x, double t) { return sglab::kink_value(k, x, t); };
    deref(out, "out") = sglab::residual(u, m, x0, x1, static_cast<int>(nx), t0, t1,
                                        static_cast<int>(nt), h_fd)
                            .max_abs;
  });
}

// fields

const char* sglab_solver_name(sglab_solver s) {
  switch (s) {
    case SGLAB_SOLVER_PARABOLIC: return "parabolic";
    case SGLAB_SOLVER_HYPERBOLIC: return "hyperbolic";
    case SGLAB_SOLVER_MEMORY: return "memory";
  }
  return "unknown";
}

sglab_status sglab_solver_parse(const char* name, sglab_solver* out) {
  return guarded([&] {
    const std::string s = cstr(name, "name");
    for (auto k : {SGLAB_SOLVER_PARABOLIC, SGLAB_SOLVER_HYPERBOLIC, SGLAB_SOLVER_MEMORY}) {
      if (s == sglab_solver_name(k)) {
        deref(out, "out") = k;
        return;
      }
    }
    sglab::fail(sglab::ErrorCode::InvalidArgument,
                "unknown solver '" + s + "' (expected parabolic, hyperbolic or memory)");
  });
}

sglab_solve_options sglab_default_solve_options(void) {
  const sglab::SolverOptions o;
  return {o.enforce_cfl ? 1 : 0, o.divergence_limit};
}

sglab_status sglab_solve(const sglab_params* p, const sglab_data* data, size_t nx, size_t nt,
                         sglab_solver solver, const sglab_solve_options* opts,
                         sglab_field** out) {
  return guarded([&] {
    const auto m = convert(p);
    const auto d = convert(data, m);
    const auto g = sglab::Grid::make(m.ell, m.horizon, nx, nt);
    sglab::SolverOptions o;
    if (opts) {
      o.enforce_cfl = opts->enforce_cfl != 0;
      o.divergence_limit = opts->divergence_limit;
    }
    switch (solver) {
      case SGLAB_SOLVER_PARABOLIC: emit(sglab::solve_parabolic(m, d, g, o), out); return;
      case SGLAB_SOLVER_HYPERBOLIC: emit(sglab::solve_hyperbolic(m, d, g, o), out); return;
      case SGLAB_SOLVER_MEMORY: emit(sglab::solve_memory(m, d, g, o), out); return;
    }
    sglab::fail(sglab::ErrorCode::InvalidArgument, "unknown solver");
  });
}

sglab_status sglab_exact_field(const sglab_family* fam, const sglab_params* p, size_t nx,
                               size_t nt, sglab_field** out) {
  return guarded([&] {
    const auto k = convert(fam);
    const auto m = convert(p);
    const auto g = sglab::Grid::make(m.ell, m.horizon, nx, nt);
    emit(sglab::sample(g, [k](double x, double t) { return sglab::kink_value(k, x, t); }), out);
  });
}

sglab_status sglab_corner_defect(const sglab_params* p, const sglab_data* data, double* out) {
  return guarded([&] {
    const auto m = convert(p);
    deref(out, "out") = sglab::corner_defect(convert(data, m), m.ell);
  });
}

sglab_status sglab_picard_basic(const sglab_params* p, size_t nx, size_t nt,
                                const sglab_policy* policy, size_t max_iter, double tol,
                                sglab_field** out, size_t* iterations, double* increments,
                                size_t capacity) {
  return guarded([&] {
    const auto m = convert(p);
    const auto g = sglab::Grid::make(m.ell, m.horizon, nx, nt);
    auto r = sglab::picard_remainder(m, sglab::basic_kink_reference(g, m.alpha), g,
                                     convert(policy), max_iter, tol);
    if (iterations) *iterations = r.iterations;
    if (increments)
      for (std::size_t i = 0; i < std::min(capacity, r.increments.size()); ++i)
        increments[i] = r.increments[i];
    emit(std::move(r.d), out);
  });
}

void sglab_field_free(sglab_field* f) { delete f; }

sglab_status sglab_field_dims(const sglab_field* f, size_t* nx, size_t* nt, double* dx,
                              double* dt) {
  return guarded([&] {
    const auto& g = deref(f, "field").field.grid();
    if (nx) *nx = g.nx;
    if (nt) *nt = g.nt;
    if (dx) *dx = g.dx;
    if (dt) *dt = g.dt;
  });
}

sglab_status sglab_field_value(const sglab_field* f, size_t i, size_t k, double* out) {
  return guarded([&] {
    const auto& fld = deref(f, "field").field;
    sglab::require(i < fld.grid().nx && k < fld.grid().levels(),
                   sglab::ErrorCode::InvalidArgument, "field index out of range");
    deref(out, "out") = fld.at(i, k);
  });
}

const double* sglab_field_data(const sglab_field* f) {
  return f ? f->field.values().data() : nullptr;
}

sglab_status sglab_remainder(const sglab_field* u, const sglab_field* U, sglab_field** out) {
  return guarded([&] {
    emit(sglab::remainder_field(deref(u, "u").field, deref(U, "U").field), out);
  });
}

sglab_status sglab_sup_profile(const sglab_field* f, double* out) {
  return guarded([&] {
    const auto prof = sglab::sup_profile(deref(f, "field").field);
    deref(out, "out");
    for (std::size_t k = 0; k < prof.size(); ++k) out[k] = prof[k].value;
  });
}

sglab_status sglab_max_diff_on_coarse(const sglab_field* coarse, const sglab_field* fine,
                                      double* out) {
  return guarded([&] {
    deref(out, "out") =
        sglab::max_diff_on_coarse(deref(coarse, "coarse").field, deref(fine, "fine").field);
  });
}

sglab_status sglab_field_write_csv(const sglab_field* f, const char* path, size_t save_every) {
  return guarded([&] {
    sglab::write_csv(deref(f, "field").field, std::string(cstr(path, "path")), save_every);
  });
}

sglab_status sglab_field_read_csv(const char* path, sglab_field** out) {
  return guarded([&] {
    std::ifstream is(cstr(path, "path"), std::ios::binary);
    if (!is) sglab::fail(sglab::ErrorCode::Io, std::string("cannot open ") + path);
    emit(sglab::read_csv(is), out);
  });
}

// estimates

sglab_status sglab_gronwall_bound(double C, double B, double m, double alpha, double k,
                                  double eps, double* out) {
  return guarded([&] { deref(out, "out") = sglab::gronwall_bound(C, B, m, alpha, k, eps); });
}

sglab_status sglab_fit_exponent(const double* eps, const double* values, size_t n,
                                double* out) {
  return guarded([&] {
    if (n > 0) {
      deref(eps, "eps");
      deref(values, "values");
    }
    deref(out, "out") = sglab::fit_exponent(std::vector<double>(eps, eps + n),
                                            std::vector<double>(values, values + n));
  });
}

sglab_status sglab_envelope_check(const sglab_params* base, sglab_sweep_list eps,
                                  sglab_sweep_list t_grid, const sglab_policy* policy,
                                  double uniformity_factor, sglab_report** out) {
  return guarded([&] {
    sglab::EnvelopeOptions o;
    o.eps_list = list_or(eps, o.eps_list);
    o.t_grid = list_or(t_grid, o.t_grid);
    if (policy) o.policy = convert(policy);
    if (uniformity_factor > 0) o.uniformity_factor = uniformity_factor;
    emit(sglab::make_artifact(sglab::envelope_check(convert(base), o)), out);
  });
}

sglab_status sglab_lemma_checks(const sglab_params* base, sglab_sweep_list eps,
                                sglab_sweep_list t_grid, const sglab_lemma_constants* constants,
                                uint64_t tail_modes, double uniformity_factor,
                                sglab_report** out) {
  return guarded([&] {
    sglab::LemmaOptions o;
    o.eps_list = list_or(eps, o.eps_list);
    o.t_grid = list_or(t_grid, o.t_grid);
    if (constants) o.constants = {constants->eta, constants->h, constants->k};
    if (tail_modes > 0) o.tail_modes = tail_modes;
    if (uniformity_factor > 0) o.uniformity_factor = uniformity_factor;
    emit(sglab::make_artifact(sglab::lemma_checks(convert(base), o)), out);
  });
}

sglab_sweep_config sglab_default_sweep_config(void) {
  const sglab::ScalingParams s;
  const sglab::GridPolicy g;
  return {s.k, s.window_start, g.nx0, g.nx_max, g.courant, g.stabilization, 10.0};
}

sglab_status sglab_boundary_layer_sweep(const sglab_params* base, sglab_sweep_list eps,
                                        const sglab_family* fam,
                                        const sglab_sweep_config* config, sglab_report** out) {
  return guarded([&] {
    const sglab_sweep_config c = config ? *config : sglab_default_sweep_config();
    sglab::ScalingParams s;
    s.k = c.k;
    s.window_start = c.window_start;
    s.eps_list = list_or(eps, s.eps_list);
    const sglab::GridPolicy g{c.nx0, c.nx_max, c.courant, c.stabilization};
    emit(sglab::make_artifact(
             sglab::boundary_layer_sweep(convert(base), s, convert(fam), g, c.ratio_limit)),
         out);
  });
}

sglab_status sglab_memory_experiment(const sglab_params* p, size_t nx, size_t nt,
                                     double amplitude, sglab_report** out) {
  return guarded([&] {
    sglab::MemoryExperimentOptions o;
    if (nx) o.nx = nx;
    if (nt) o.nt = nt;
    o.amplitude = amplitude;
    emit(sglab::make_artifact(sglab::memory_experiment(convert(p), o)), out);
  });
}

int sglab_report_passed(const sglab_report* r) { return r && r->artifact.passed ? 1 : 0; }

const char* sglab_report_json(const sglab_report* r, int indent) {
  if (!r) return nullptr;
  return indent ? r->json_pretty.c_str() : r->json_compact.c_str();
}

size_t sglab_report_table_count(const sglab_report* r) {
  return r ? r->artifact.tables.size() : 0;
}

const char* sglab_report_table_name(const sglab_report* r, size_t i) {
  if (!r || i >= r->artifact.tables.size()) return nullptr;
  return r->artifact.tables[i].first.c_str();
}

const char* sglab_report_table(const sglab_report* r, const char* name) {
  if (!r || !name) return nullptr;
  const std::string* t = r->artifact.table(name);
  return t ? t->c_str() : nullptr;
}

void sglab_report_free(sglab_report* r) { delete r; }

}  // extern "C"
