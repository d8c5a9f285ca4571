#pragma once

#include <cstddef>
#include <vector>

#include "sglab/params.hpp"

namespace sglab {

enum class Regime { Hyperbolic, Trigonometric, Degenerate };

const char* to_string(Regime r) noexcept;

/// Per-mode spectral quantities of the linear operator.
struct ModeData {
  std::size_t n = 0;
  double gamma_n = 0;  ///< wavenumber n*pi/ell
  double h_n = 0;      ///< damping rate (alpha + eps*gamma_n^2)/2
  double disc = 0;     ///< h_n^2 - gamma_n^2
  Regime regime = Regime::Degenerate;
  double freq = 0;     ///< sqrt(|disc|)
};

ModeData mode_data(const ModelParams& p, std::size_t n);

/// Band [n1, n2] of trigonometric (oscillating) modes.
struct RegimeSplit {
  bool defined = false;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double lower = 0;  ///< (ell/(pi eps)) (1 - sqrt(1 - alpha eps))
  double upper = 0;  ///< (ell/(pi eps)) (1 + sqrt(1 - alpha eps))
};

/// The split is undefined when alpha*eps >= 1 (no real band) or eps == 0
/// (the band is unbounded above).
RegimeSplit regime_split(const ModelParams& p);

/// H_n(t). Real continuation across the three regimes, stable for small
/// freq*t and for large h_n.
double kernel_mode(const ModelParams& p, std::size_t n, double t);
double kernel_mode(const ModeData& m, double t);

/// Smallest N accepted by tail_bound: every mode above N is hyperbolic and
/// gamma_n/h_n is decreasing there.
std::size_t tail_start(const ModelParams& p);

/// Rigorous upper bound on sum_{n>N} |H_n(t)|, built from the per-mode
/// majorant H_n(t) <= exp(-t gamma_n^2/(2 h_n)) * min(t, 1/(2 omega_n)) and an
/// integral comparison for sum 1/n^2. Nonincreasing in N; nonincreasing in t
/// for t >= 1 when eps < 1/2.
double tail_bound(const ModelParams& p, std::size_t N, double t);

/// A truncated series value together with its certified remainder.
struct SeriesValue {
  double value = 0;
  double tail = 0;         ///< bound on the omitted terms
  std::size_t modes = 0;   ///< number of summed modes
};

/// Smallest N >= tail_start with tail_bound(N, t) < tail_tol.
/// Throws TailNotConverged when policy.max_modes is reached first.
std::size_t modes_needed(const ModelParams& p, double t,
                         const TruncationPolicy& policy);

/// sum_n H_n(t) cos(gamma_n xi) cos(gamma_n x)
SeriesValue theta_sum(const ModelParams& p, double x, double xi, double t,
                      const TruncationPolicy& policy);

/// sum_{n >= first} H_n(t), tail bound attached.
SeriesValue kernel_sum(const ModelParams& p, double t,
                       const TruncationPolicy& policy, std::size_t first = 1);

/// Zero-mode response (1 - exp(-alpha t)) / alpha.
double zero_mode_kernel(double alpha, double t);

/// Green function of the remainder problem; value carries the theta tail
/// scaled by 2/ell.
SeriesValue green(const ModelParams& p, double x, double xi, double t,
                  const TruncationPolicy& policy);

/// Decay-rate constant of the kernel envelope. `use_min` selects
/// min{alpha/4, alpha ell^2/(2 pi^2)} instead of the printed max.
double envelope_rate(const ModelParams& p, bool use_min = false);

struct DecayPoint {
  double t = 0;
  double sum_h = 0;      ///< truncated sum plus tail bound
  double tail = 0;
  std::size_t modes = 0;
  double envelope = 0;   ///< exp(-m t), m as printed
  double ratio = 0;      ///< sum_h / envelope
  double envelope_min = 0;
  double ratio_min = 0;
};

std::vector<DecayPoint> decay_profile(const ModelParams& p,
                                      const std::vector<double>& t_grid,
                                      const TruncationPolicy& policy);

/// R(n,t) of the circular-term comparison, with the n-dependent reference
/// frequency omega_0 = sqrt(gamma_n^2 - alpha^2/4) and reference damping
/// h_1 = (alpha + eps pi^2/ell^2)/2. Requires mode n to be trigonometric.
double circular_difference(const ModelParams& p, std::size_t n, double t);

}  // namespace sglab
