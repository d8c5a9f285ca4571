#include "sglab/pde_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace sglab {

namespace {

// Thomas algorithm for sub/diag/super bands; rhs is overwritten by the solution.
class Tridiagonal {
 public:
  explicit Tridiagonal(std::size_t n) : lower_(n, 0.0), diag_(n, 0.0), upper_(n, 0.0), work_(n) {}

  std::vector<double>& lower() { return lower_; }
  std::vector<double>& diag() { return diag_; }
  std::vector<double>& upper() { return upper_; }

  void solve(std::vector<double>& rhs) {
    const std::size_t n = diag_.size();
    double pivot = diag_[0];
    check(pivot, 0);
    rhs[0] /= pivot;
    for (std::size_t i = 1; i < n; ++i) {
      work_[i] = upper_[i - 1] / pivot;
      pivot = diag_[i] - lower_[i] * work_[i];
      check(pivot, i);
      rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= work_[i + 1] * rhs[i + 1];
  }

 private:
  static void check(double pivot, std::size_t row) {
    if (!(std::abs(pivot) > 1e-300) || !std::isfinite(pivot)) {
      std::ostringstream os;
      os << "singular tridiagonal system at row " << row;
      fail(ErrorCode::LinearSolve, os.str());
    }
  }

  std::vector<double> lower_, diag_, upper_, work_;
};

// Neumann Laplacian with second-order ghost nodes: D u = L u + flux terms.
void laplacian(std::span<const double> u, double dx, double flux0, double flux1,
               std::vector<double>& out) {
  const std::size_t n = u.size();
  const double inv = 1.0 / (dx * dx);
  out[0] = (2.0 * u[1] - 2.0 * u[0]) * inv - 2.0 * flux0 / dx;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv;
  out[n - 1] = (2.0 * u[n - 2] - 2.0 * u[n - 1]) * inv + 2.0 * flux1 / dx;
}

// Bands of (c0 I - c1 L) for the homogeneous Neumann Laplacian L.
void assemble(Tridiagonal& A, double c0, double c1, double dx) {
  const std::size_t n = A.diag().size();
  const double s = c1 / (dx * dx);
  for (std::size_t i = 0; i < n; ++i) {
    A.diag()[i] = c0 + 2.0 * s;
    A.lower()[i] = -s;
    A.upper()[i] = -s;
  }
  A.upper()[0] = -2.0 * s;
  A.lower()[n - 1] = -2.0 * s;
}

void check_level(std::span<const double> u, const Grid& g, std::size_t k,
                 double limit, const char* solver) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || std::abs(u[i]) > limit) {
      std::ostringstream os;
      os << solver << " diverged at x=" << g.x(i) << ", t=" << g.t(k)
         << " (value " << u[i] << ")";
      fail(ErrorCode::Divergence, os.str());
    }
  }
}

void check_setup(const ModelParams& p, const NeumannData& data, const Grid& g,
                 bool cfl, const char* solver) {
  validate_for_solver(p);
  require(data.h0 && data.h1 && data.phi0 && data.phi1, ErrorCode::InvalidArgument,
          "Neumann data is incomplete");
  require(std::abs(g.ell - p.ell) <= 1e-12 * p.ell, ErrorCode::InvalidArgument,
          "grid length differs from ell");
  if (cfl && g.dt > g.dx * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << solver << ": dt=" << g.dt << " exceeds dx=" << g.dx << " (CFL, unit wave speed)";
    fail(ErrorCode::CflViolation, os.str());
  }
}

void initial_level(Field& f, const SpaceFn& h0) {
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < g.nx; ++i) f.at(i, 0) = h0(g.x(i));
}

}  // namespace

MemoryParams MemoryParams::from(const ModelParams& p) {
  require(p.eps > 0, ErrorCode::InvalidArgument, "memory form needs eps > 0");
  MemoryParams m;
  m.beta = 1.0 / p.eps;
  m.a_coef = p.alpha - m.beta;
  m.delta = -m.a_coef / p.eps;
  return m;
}

Field solve_hyperbolic(const ModelParams& p, const NeumannData& data, const Grid& g,
                       const SolverOptions& opts) {
  check_setup(p, data, g, true, "solve_hyperbolic");
  const std::size_t nx = g.nx;
  const double dt = g.dt, dx = g.dx, a = p.alpha, gam = p.gamma_bias;
  Field U(g);
  initial_level(U, data.h0);
  check_level(U.level(0), g, 0, opts.divergence_limit, "solve_hyperbolic");

  std::vector<double> lap(nx), h1(nx);
  for (std::size_t i = 0; i < nx; ++i) h1[i] = data.h1(g.x(i));
  {
    auto u0 = U.level(0);
    laplacian(u0, dx, data.phi0(0.0), data.phi1(0.0), lap);
    auto u1 = U.level(1);
    for (std::size_t i = 0; i < nx; ++i) {
      const double utt = lap[i] - a * h1[i] - std::sin(u0[i]) - gam;
      u1[i] = u0[i] + dt * h1[i] + 0.5 * dt * dt * utt;
    }
    check_level(u1, g, 1, opts.divergence_limit, "solve_hyperbolic");
  }
  const double damp = 0.5 * a * dt;
  for (std::size_t k = 1; k < g.nt; ++k) {
    auto prev = U.level(k - 1);
    auto cur = U.level(k);
    const double tk = g.t(k);
    laplacian(cur, dx, data.phi0(tk), data.phi1(tk), lap);
    auto next = U.level(k + 1);
    for (std::size_t i = 0; i < nx; ++i) {
      const double rhs = lap[i] - std::sin(cur[i]) - gam;
      next[i] = (2.0 * cur[i] - (1.0 - damp) * prev[i] + dt * dt * rhs) / (1.0 + damp);
    }
    check_level(next, g, k + 1, opts.divergence_limit, "solve_hyperbolic");
  }
  return U;
}

Field solve_parabolic(const ModelParams& p, const NeumannData& data, const Grid& g,
                      const SolverOptions& opts) {
  check_setup(p, data, g, opts.enforce_cfl, "solve_parabolic");
  require(p.eps > 0, ErrorCode::InvalidArgument, "solve_parabolic needs eps > 0");
  const std::size_t nx = g.nx;
  const double dt = g.dt, dx = g.dx, a = p.alpha, eps = p.eps, gam = p.gamma_bias;
  Field u(g);
  initial_level(u, data.h0);
  check_level(u.level(0), g, 0, opts.divergence_limit, "solve_parabolic");

  std::vector<double> v(nx), lap_u(nx), lap_v(nx), base(nx), rhs(nx);
  for (std::size_t i = 0; i < nx; ++i) v[i] = data.h1(g.x(i));

  // (1/dt + a/2) v+ - sigma L v+ = (1/dt - a/2) v + sigma L v + D u + flux terms - N
  const double sigma = 0.5 * eps + 0.25 * dt;
  Tridiagonal A(nx);
  std::vector<double> vnew(nx);

  for (std::size_t k = 0; k < g.nt; ++k) {
    auto cur = u.level(k);
    auto next = u.level(k + 1);
    const double t0 = g.t(k), t1 = g.t(k + 1);
    const double f00 = data.phi0(t0), f01 = data.phi0(t1);
    const double f10 = data.phi1(t0), f11 = data.phi1(t1);
    // homogeneous parts; boundary fluxes enter separately below
    laplacian(cur, dx, 0.0, 0.0, lap_u);
    laplacian(v, dx, 0.0, 0.0, lap_v);
    for (std::size_t i = 0; i < nx; ++i)
      base[i] = (1.0 / dt - 0.5 * a) * v[i] + sigma * lap_v[i] + lap_u[i];
    // D u averaged over the step contributes the mean flux; eps D v the flux rate
    const double left = 0.5 * (f00 + f01) + eps * (f01 - f00) / dt;
    const double right = 0.5 * (f10 + f11) + eps * (f11 - f10) / dt;
    base[0] -= 2.0 * left / dx;
    base[nx - 1] += 2.0 * right / dx;

    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t i = 0; i < nx; ++i) {
        const double umid = sweep == 0 ? cur[i] : 0.5 * (cur[i] + next[i]);
        rhs[i] = base[i] - std::sin(umid) - gam;
      }
      assemble(A, 1.0 / dt + 0.5 * a, sigma, dx);
      A.solve(rhs);
      vnew = rhs;
      for (std::size_t i = 0; i < nx; ++i) next[i] = cur[i] + 0.5 * dt * (vnew[i] + v[i]);
    }
    v.swap(vnew);
    check_level(next, g, k + 1, opts.divergence_limit, "solve_parabolic");
  }
  return u;
}

Field solve_memory(const ModelParams& p, const NeumannData& data, const Grid& g,
                   const SolverOptions& opts) {
  check_setup(p, data, g, opts.enforce_cfl, "solve_memory");
  require(p.eps > 0, ErrorCode::InvalidArgument, "solve_memory needs eps > 0");
  const MemoryParams mp = MemoryParams::from(p);
  const std::size_t nx = g.nx;
  const double dt = g.dt, dx = g.dx, eps = p.eps, gam = p.gamma_bias;

  Field u(g);
  initial_level(u, data.h0);
  check_level(u.level(0), g, 0, opts.divergence_limit, "solve_memory");
  std::vector<double> w(nx, 0.0), v(nx, 0.0), vnew(nx), lap(nx), base(nx), rhs(nx);

  // w^{k+1} = cw w^k + dw (u^{k+1} + u^k)
  const double cw = (1.0 - 0.5 * mp.beta * dt) / (1.0 + 0.5 * mp.beta * dt);
  const double dw = 0.5 * dt / (1.0 + 0.5 * mp.beta * dt);
  // v^{k+1} = cv v^k + dv (N^{k+1} + N^k), N = sin u - gamma
  const double cv = (1.0 - 0.5 * dt / eps) / (1.0 + 0.5 * dt / eps);
  const double dv = 0.5 * dt / (1.0 + 0.5 * dt / eps);
  const double c0 = 1.0 + 0.5 * dt * (mp.a_coef + mp.delta * dw);
  const double c0_rhs = 1.0 - 0.5 * dt * (mp.a_coef + mp.delta * dw);
  Tridiagonal A(nx);

  for (std::size_t k = 0; k < g.nt; ++k) {
    auto cur = u.level(k);
    auto next = u.level(k + 1);
    const double t0 = g.t(k), t1 = g.t(k + 1);
    laplacian(cur, dx, 0.0, 0.0, lap);
    for (std::size_t i = 0; i < nx; ++i)
      base[i] = c0_rhs * cur[i] + 0.5 * dt * eps * lap[i] -
                0.5 * dt * mp.delta * (1.0 + cw) * w[i];
    base[0] -= 0.5 * dt * eps * 2.0 * (data.phi0(t0) + data.phi0(t1)) / dx;
    base[nx - 1] += 0.5 * dt * eps * 2.0 * (data.phi1(t0) + data.phi1(t1)) / dx;

    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t i = 0; i < nx; ++i) {
        const double n_old = std::sin(cur[i]) - gam;
        const double n_new = (sweep == 0 ? std::sin(cur[i]) : std::sin(next[i])) - gam;
        vnew[i] = cv * v[i] + dv * (n_new + n_old);
        rhs[i] = base[i] - 0.5 * dt * (vnew[i] + v[i]);
      }
      assemble(A, c0, 0.5 * dt * eps, dx);
      A.solve(rhs);
      for (std::size_t i = 0; i < nx; ++i) next[i] = rhs[i];
    }
    for (std::size_t i = 0; i < nx; ++i) {
      w[i] = cw * w[i] + dw * (next[i] + cur[i]);
      v[i] = vnew[i];
    }
    check_level(next, g, k + 1, opts.divergence_limit, "solve_memory");
  }
  return u;
}

SpaceFn implied_initial_velocity(const ModelParams& p, const SpaceFn& h0) {
  const MemoryParams mp = MemoryParams::from(p);
  const double eps = p.eps;
  return [h0, mp, eps](double x) {
    constexpr double h = 1e-3;
    const double d2 = (-h0(x + 2 * h) + 16 * h0(x + h) - 30 * h0(x) + 16 * h0(x - h) -
                       h0(x - 2 * h)) /
                      (12 * h * h);
    return eps * d2 - mp.a_coef * h0(x);
  };
}

double corner_defect(const NeumannData& data, double ell) {
  const double h = 1e-5 * ell;
  const double left = (-3 * data.h0(0) + 4 * data.h0(h) - data.h0(2 * h)) / (2 * h);
  const double right = (3 * data.h0(ell) - 4 * data.h0(ell - h) + data.h0(ell - 2 * h)) / (2 * h);
  return std::max(std::abs(left - data.phi0(0)), std::abs(right - data.phi1(0)));
}

ReferenceSolution basic_kink_reference(const Grid& grid, double alpha) {
  const KinkFamily fam{FamilyKind::Basic, alpha, 0.0};
  return {sample(grid, [fam](double x, double t) { return kink_value(fam, x, t); }),
          sample(grid, [alpha](double x, double t) { return u_xxt_basic(alpha, x, t); })};
}

}  // namespace sglab
