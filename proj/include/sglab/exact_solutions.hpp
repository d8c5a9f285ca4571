#pragma once

#include <functional>

#include "sglab/params.hpp"

namespace sglab {

/// Closed-form traveling-wave solutions of the damped hyperbolic equation
/// U_xx - U_tt - alpha U_t = sin U + gamma, all functions of xi = (x - t)/alpha.
enum class FamilyKind {
  Gamma0,  ///< 4 arctan(y + sqrt(y^2+1)), y = r0 exp(-xi); gamma = 0
  Gamma1,  ///< same outer form, y = (2 + r0 - xi)/(r0 - xi); gamma = 1
  Basic,   ///< 2 arctan(exp(xi)); gamma = 0
};

const char* to_string(FamilyKind k) noexcept;

struct KinkFamily {
  FamilyKind family = FamilyKind::Basic;
  double alpha = 0.5;
  double r0 = 0.0;
};

/// The gamma value a family solves the equation for.
double family_gamma(FamilyKind k) noexcept;

/// Throws InvalidArgument when alpha <= 0 or gamma does not match the family.
void validate_family(const KinkFamily& f, double gamma_bias);

/// 2 arctan(exp(f)).
double pi_transform(double f);

/// Reduced profile f(xi) of the 2*Pi[f] families (asinh of y). Gamma0/Gamma1 only.
double family_profile(const KinkFamily& fam, double xi);

/// U(x, t). Throws PoleError for Gamma1 within 1e-8 of xi = r0.
double kink_value(const KinkFamily& fam, double x, double t);

/// dU/dxi from the closed form; U_x = U'/alpha and U_t = -U'/alpha.
double kink_dxi(const KinkFamily& fam, double xi);

/// Right-hand side -tanh f + (gamma/2) cosh f of the reduced first-order ODE.
double ode_rhs(double f, double gamma_bias);

/// df/dxi (4th-order central difference of the family profile) minus
/// ode_rhs(f(xi)). Throws DenominatorZero at equilibria of the reduction.
double ode_rhs_check(const KinkFamily& fam, double xi);

/// U_xxt of the basic kink, overflow-safe for any |xi|.
double u_xxt_basic(double alpha, double x, double t);

/// sup over xi of |U_xxt| for the basic kink, by scan plus golden-section
/// refinement.
double boundedness_certificate(double alpha);

using SpaceTimeFn = std::function<double(double, double)>;
using SpaceFn = std::function<double(double)>;

/// Initial and boundary data of the Neumann problem.
struct NeumannData {
  SpaceFn h0;    ///< u(x, 0)
  SpaceFn h1;    ///< u_t(x, 0)
  SpaceFn phi0;  ///< u_x(0, t)
  SpaceFn phi1;  ///< u_x(ell, t)
};

NeumannData neumann_data_from(const KinkFamily& fam, const ModelParams& p);

/// h0 = value, h1 = 0, zero flux.
NeumannData constant_data(double value);

/// Pointwise residual U_xx - U_tt - alpha U_t - sin U - gamma, derivatives by
/// 4th-order central differences with step h_fd. `richardson` receives the
/// change of the residual when the step is doubled.
double residual_at(const SpaceTimeFn& u, const ModelParams& p, double x,
                   double t, double h_fd, double* richardson = nullptr);

struct ResidualSummary {
  double max_abs = 0;
  double richardson = 0;  ///< max |r(h) - r(2h)| over the grid
  double worst_x = 0;
  double worst_t = 0;
};

/// Residual over an nx x nt tensor grid covering [x0,x1] x [t0,t1].
ResidualSummary residual(const SpaceTimeFn& u, const ModelParams& p,
                         double x0, double x1, int nx, double t0, double t1,
                         int nt, double h_fd);

}  // namespace sglab
