#include "sglab/exact_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sglab {

namespace {

constexpr double kPoleGap = 1e-8;

double sech(double v) { return 1.0 / std::cosh(v); }

double gamma1_ratio(double r0, double xi) {
  const double gap = r0 - xi;
  if (std::abs(gap) < kPoleGap) {
    std::ostringstream os;
    os << "Gamma1 family evaluated at its pole xi=r0=" << r0;
    fail(ErrorCode::PoleError, os.str());
  }
  return (2.0 + gap) / gap;
}

// 4th-order central stencils
template <class F>
double d1(F&& f, double z, double h) {
  return (-f(z + 2 * h) + 8 * f(z + h) - 8 * f(z - h) + f(z - 2 * h)) / (12 * h);
}

template <class F>
double d2(F&& f, double z, double h) {
  return (-f(z + 2 * h) + 16 * f(z + h) - 30 * f(z) + 16 * f(z - h) -
          f(z - 2 * h)) /
         (12 * h * h);
}

double residual_with_step(const SpaceTimeFn& u, const ModelParams& p, double x,
                          double t, double h) {
  const double uxx = d2([&](double s) { return u(s, t); }, x, h);
  const double utt = d2([&](double s) { return u(x, s); }, t, h);
  const double ut = d1([&](double s) { return u(x, s); }, t, h);
  return uxx - utt - p.alpha * ut - std::sin(u(x, t)) - p.gamma_bias;
}

}  // namespace

const char* to_string(FamilyKind k) noexcept {
  switch (k) {
    case FamilyKind::Gamma0: return "gamma0";
    case FamilyKind::Gamma1: return "gamma1";
    case FamilyKind::Basic: return "basic";
  }
  return "unknown";
}

double family_gamma(FamilyKind k) noexcept {
  return k == FamilyKind::Gamma1 ? 1.0 : 0.0;
}

void validate_family(const KinkFamily& f, double gamma_bias) {
  require(std::isfinite(f.alpha) && f.alpha > 0, ErrorCode::InvalidArgument,
          "kink family needs alpha > 0");
  require(std::isfinite(f.r0), ErrorCode::InvalidArgument, "r0 must be finite");
  if (gamma_bias != family_gamma(f.family)) {
    std::ostringstream os;
    os << to_string(f.family) << " family solves the equation for gamma="
       << family_gamma(f.family) << ", got gamma=" << gamma_bias;
    fail(ErrorCode::InvalidArgument, os.str());
  }
}

double pi_transform(double f) { return 2.0 * std::atan(std::exp(f)); }

double family_profile(const KinkFamily& fam, double xi) {
  switch (fam.family) {
    case FamilyKind::Gamma0: return std::asinh(fam.r0 * std::exp(-xi));
    case FamilyKind::Gamma1: return std::asinh(gamma1_ratio(fam.r0, xi));
    case FamilyKind::Basic: break;
  }
  fail(ErrorCode::InvalidArgument,
       "the basic kink is not generated by a reduced profile f");
}

double kink_value(const KinkFamily& fam, double x, double t) {
  const double xi = (x - t) / fam.alpha;
  if (fam.family == FamilyKind::Basic) return pi_transform(xi);
  // 4 arctan(y + sqrt(y^2+1)) == 2 Pi(asinh y), without the cancellation for y << 0
  return 2.0 * pi_transform(family_profile(fam, xi));
}

double kink_dxi(const KinkFamily& fam, double xi) {
  switch (fam.family) {
    case FamilyKind::Basic: return sech(xi);
    case FamilyKind::Gamma0: {
      const double y = fam.r0 * std::exp(-xi);
      return -2.0 * y / (1.0 + y * y);
    }
    case FamilyKind::Gamma1: {
      const double y = gamma1_ratio(fam.r0, xi);
      const double gap = fam.r0 - xi;
      const double dy = 2.0 / (gap * gap);
      return 2.0 * dy / (1.0 + y * y);
    }
  }
  return 0.0;
}

double ode_rhs(double f, double gamma_bias) {
  return -std::tanh(f) + 0.5 * gamma_bias * std::cosh(f);
}

double ode_rhs_check(const KinkFamily& fam, double xi) {
  const double f = family_profile(fam, xi);
  const double rhs = ode_rhs(f, family_gamma(fam.family));
  if (rhs == 0.0) {
    std::ostringstream os;
    os << "reduction denominator vanishes at f=" << f << " (equilibrium)";
    fail(ErrorCode::DenominatorZero, os.str());
  }
  const double dfdxi = d1([&](double s) { return family_profile(fam, s); }, xi, 1e-3);
  return dfdxi - rhs;
}

double u_xxt_basic(double alpha, double x, double t) {
  const double xi = (x - t) / alpha;
  // -(2/a^3)(e^{2xi} - 6 + e^{-2xi})/(e^xi + e^{-xi})^3 == (2 sech^3 - sech)/a^3
  const double s = sech(xi);
  return (2.0 * s * s * s - s) / (alpha * alpha * alpha);
}

double boundedness_certificate(double alpha) {
  require(std::isfinite(alpha) && alpha > 0, ErrorCode::InvalidArgument,
          "boundedness_certificate needs alpha > 0");
  auto g = [alpha](double xi) { return std::abs(u_xxt_basic(alpha, alpha * xi, 0.0)); };
  constexpr double lo = -40.0, hi = 40.0;
  constexpr int samples = 8001;
  const double step = (hi - lo) / (samples - 1);
  int best = 0;
  double best_val = -1;
  for (int i = 0; i < samples; ++i) {
    const double v = g(lo + i * step);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + std::max(0, best - 1) * step;
  double b = lo + std::min(samples - 1, best + 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
    if (gc > gd) {
      b = d; d = c; gd = gc;
      c = b - inv_phi * (b - a); gc = g(c);
    } else {
      a = c; c = d; gc = gd;
      d = a + inv_phi * (b - a); gd = g(d);
    }
  }
  return std::max({best_val, gc, gd});
}

NeumannData neumann_data_from(const KinkFamily& fam, const ModelParams& p) {
  validate_for_solver(p);
  validate_family(fam, p.gamma_bias);
  require(std::abs(fam.alpha - p.alpha) <= 1e-14 * p.alpha, ErrorCode::InvalidArgument,
          "kink family alpha must match the model alpha");
  if (fam.family == FamilyKind::Gamma1) {
    const double lo = -p.horizon / fam.alpha, hi = p.ell / fam.alpha;
    if (fam.r0 >= lo - kPoleGap && fam.r0 <= hi + kPoleGap) {
      std::ostringstream os;
      os << "Gamma1 pole xi=r0=" << fam.r0 << " lies inside the domain";
      fail(ErrorCode::PoleError, os.str());
    }
  }
  const double a = fam.alpha, ell = p.ell;
  NeumannData d;
  d.h0 = [fam](double x) { return kink_value(fam, x, 0.0); };
  d.h1 = [fam, a](double x) { return -kink_dxi(fam, x / a) / a; };
  d.phi0 = [fam, a](double t) { return kink_dxi(fam, -t / a) / a; };
  d.phi1 = [fam, a, ell](double t) { return kink_dxi(fam, (ell - t) / a) / a; };
  return d;
}

NeumannData constant_data(double value) {
  NeumannData d;
  d.h0 = [value](double) { return value; };
  d.h1 = [](double) { return 0.0; };
  d.phi0 = [](double) { return 0.0; };
  d.phi1 = [](double) { return 0.0; };
  return d;
}

double residual_at(const SpaceTimeFn& u, const ModelParams& p, double x,
                   double t, double h_fd, double* richardson) {
  require(h_fd > 0, ErrorCode::InvalidArgument, "finite-difference step must be positive");
  const double r = residual_with_step(u, p, x, t, h_fd);
  if (richardson) *richardson = std::abs(r - residual_with_step(u, p, x, t, 2 * h_fd));
  return r;
}

ResidualSummary residual(const SpaceTimeFn& u, const ModelParams& p, double x0,
                         double x1, int nx, double t0, double t1, int nt,
                         double h_fd) {
  require(nx >= 2 && nt >= 2, ErrorCode::InvalidArgument,
          "residual grid needs at least 2 points per direction");
  ResidualSummary out;
  for (int k = 0; k < nt; ++k) {
    const double t = t0 + (t1 - t0) * k / (nt - 1);
    for (int i = 0; i < nx; ++i) {
      const double x = x0 + (x1 - x0) * i / (nx - 1);
      double rich = 0;
      const double r = std::abs(residual_at(u, p, x, t, h_fd, &rich));
      out.richardson = std::max(out.richardson, rich);
      if (r > out.max_abs) {
        out.max_abs = r;
        out.worst_x = x;
        out.worst_t = t;
      }
    }
  }
  return out;
}

}  // namespace sglab
