#pragma once

#include <cstddef>

#include "sglab/exact_solutions.hpp"
#include "sglab/field.hpp"
#include "sglab/params.hpp"
#include "sglab/spectral_kernel.hpp"

namespace sglab {

/// Coefficients of the integro-differential (memory) form for given (alpha, eps).
struct MemoryParams {
  double a_coef = 0;  ///< alpha - 1/eps
  double delta = 0;   ///< -a/eps
  double beta = 0;    ///< 1/eps

  static MemoryParams from(const ModelParams& p);
};

struct SolverOptions {
  /// dt <= dx. Always enforced for the explicit hyperbolic scheme; for the
  /// implicit schemes it is an accuracy guard that can be switched off.
  bool enforce_cfl = true;
  double divergence_limit = 1e6;
};

/// Hyperbolic limit (eps = 0, whatever p.eps holds): centered leapfrog with
/// centered damping, ghost-node Neumann data, Taylor first step.
Field solve_hyperbolic(const ModelParams& p, const NeumannData& data,
                       const Grid& grid, const SolverOptions& opts = {});

/// Full problem with the eps u_xxt term. Crank-Nicolson on the first-order
/// system (u, v = u_t): one tridiagonal solve for v per sweep, sin u lagged in
/// the predictor and midpoint-corrected once.
Field solve_parabolic(const ModelParams& p, const NeumannData& data,
                      const Grid& grid, const SolverOptions& opts = {});

/// Memory form u_t - eps u_xx + a u + delta w = -v with the local ODEs
/// w' = u - beta w and v' = sin u - gamma - v/eps (w(0) = v(0) = 0). Only
/// data.h0 enters as an initial condition; the implied initial velocity is
/// implied_initial_velocity().
Field solve_memory(const ModelParams& p, const NeumannData& data,
                   const Grid& grid, const SolverOptions& opts = {});

/// u_t(x, 0) of the memory form: eps h0''(x) - a h0(x).
SpaceFn implied_initial_velocity(const ModelParams& p, const SpaceFn& h0);

/// max(|h0'(0) - phi0(0)|, |h0'(ell) - phi1(0)|), h0' by second-order
/// one-sided differences.
double corner_defect(const NeumannData& data, double ell);

/// Reference solution for the remainder equation: U and U_xxt sampled on the
/// grid on which the remainder is sought.
struct ReferenceSolution {
  Field u;
  Field u_xxt;
};

ReferenceSolution basic_kink_reference(const Grid& grid, double alpha);

struct PicardResult {
  Field d;
  std::size_t iterations = 0;
  std::vector<double> increments;  ///< sup-norm of successive differences
  std::size_t modes = 0;           ///< cosine modes used for the kernel
};

/// Fixed-point iteration for the remainder integral equation, starting from
/// d = 0. The kernel is applied mode by mode: the forcing is projected on
/// cos(gamma_n x) with the trapezoid rule, and the time convolution with
/// H_n uses product-trapezoid weights (forcing linear in tau between levels,
/// kernel integrated by composite Gauss-Legendre). Modes are capped at
/// min(policy.max_modes, nx - 1), the resolution of the spatial quadrature.
PicardResult picard_remainder(const ModelParams& p, const ReferenceSolution& ref,
                              const Grid& grid, const TruncationPolicy& policy,
                              std::size_t max_iter, double tol);

}  // namespace sglab
