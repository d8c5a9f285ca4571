#pragma once

#include <cstddef>

#include "sglab/errors.hpp"

namespace sglab {

/// Physical parameters of the Neumann problem on [0, ell] x [0, horizon].
struct ModelParams {
  double ell = 3.141592653589793;  ///< junction length
  double alpha = 0.5;              ///< dissipation coefficient
  double eps = 0.1;                ///< coefficient of the u_xxt term
  double gamma_bias = 0.0;         ///< constant forcing
  double horizon = 1.0;            ///< final time T
};

/// Checks the solver-level invariants: ell > 0, horizon > 0, alpha > 0,
/// eps >= 0, all finite.
void validate_for_solver(const ModelParams& p);

/// Checks the solver invariants plus the standing hypothesis of the decay
/// estimates, 0 < alpha < 1 and 0 < eps < 1.
void validate_for_estimates(const ModelParams& p);

/// Series cutoff for the Green-function sums.
struct TruncationPolicy {
  std::size_t max_modes = 10'000'000;
  double tail_tol = 1e-10;
};

void validate(const TruncationPolicy& policy);

}  // namespace sglab
