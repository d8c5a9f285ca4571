#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sglab/exact_solutions.hpp"
#include "sglab/field.hpp"
#include "sglab/params.hpp"
#include "sglab/pde_lab.hpp"
#include "sglab/spectral_kernel.hpp"

namespace sglab {

/// C eps^(1-k/alpha) log(1/eps^k) e^(B/m). DomainError unless every argument
/// is positive (B may be 0), 0 < k < alpha and 0 < eps < 1.
double gronwall_bound(double C, double B, double m, double alpha, double k, double eps);

/// Least-squares slope of log(values) against log(eps). DegenerateFit on
/// fewer than 3 points or constant eps; DomainError on non-positive input.
double fit_exponent(const std::vector<double>& eps, const std::vector<double>& values);

/// Default sweep of the dissipation-uniformity checks.
std::vector<double> default_eps_sweep();

/// n points evenly spaced on [a, b].
std::vector<double> linspace(double a, double b, std::size_t n);

// ---------------------------------------------------------------------------
// kernel envelope

struct EnvelopeOptions {
  std::vector<double> eps_list = default_eps_sweep();
  std::vector<double> t_grid = linspace(1.0, 20.0, 40);
  TruncationPolicy policy{10'000'000, 1e-8};
  double uniformity_factor = 10.0;
};

struct EnvelopeRow {
  double eps = 0;
  std::vector<DecayPoint> points;
  double sup_ratio = 0;       ///< with m as printed
  double t_at_sup = 0;
  double sup_ratio_min = 0;   ///< with the min variant of m
  double sup_abs_ratio = 0;   ///< (|truncated sum| + tail) e^{m t}; the signed sum can be negative
};

struct EnvelopeReport {
  ModelParams base;
  EnvelopeOptions options;
  double m = 0, m_min = 0;
  std::vector<EnvelopeRow> rows;  ///< ordered as options.eps_list
  double spread = 0;       ///< max/min of sup_ratio over the sweep
  double growth = 0;       ///< max sup_ratio / sup_ratio of the first eps
  double spread_min = 0;
  double growth_min = 0;
  double spread_abs = 0;   ///< max/min of sup_abs_ratio, informational
  bool decays = false;     ///< |sum H| smaller at the last time than at the first, every eps
  bool passed = false;     ///< spread <= uniformity_factor, m as printed
  bool passed_min = false;
};

/// ell, alpha and gamma are taken from base; eps runs over the sweep.
EnvelopeReport envelope_check(const ModelParams& base, const EnvelopeOptions& opts = {});

// ---------------------------------------------------------------------------
// decay inequalities for the three spectral bands

struct LemmaConstants {
  double eta = 0.5;
  double h = 0.25;
  double k = 1.25;
  double rho() const;  ///< min{eta, 1-eta, 1/2-h, 3/2-k}
};

struct LemmaOptions {
  std::vector<double> eps_list = default_eps_sweep();
  std::vector<double> t_grid = linspace(1.0, 5.0, 17);
  LemmaConstants constants;
  std::size_t tail_modes = 10'000;  ///< modes summed directly above N2
  double uniformity_factor = 10.0;
};

enum class BandStatus { Evaluated, SkippedBand };

const char* to_string(BandStatus s) noexcept;

/// One inequality at one eps: lhs[i] at t_grid[i], and the smallest constant
/// c with lhs <= c * rate(t) on the grid.
struct BandFit {
  BandStatus status = BandStatus::SkippedBand;
  std::size_t first = 0, last = 0;  ///< summed index range
  std::vector<double> lhs;
  std::vector<double> envelope;
  double fitted = 0;
};

struct LemmaRow {
  double eps = 0;
  std::size_t n1 = 0, n2 = 0;
  BandFit tail;      ///< n > N2 against e^{-t/(4 eps)}
  BandFit low;       ///< n < N1 against e^{-t l^2/(2 eps pi^2)}
  BandFit circular;  ///< sum of R(n,t) over [N1, N2] against eps^rho e^{-alpha t/4}
};

struct LemmaVerdict {
  std::string name;
  bool skipped = false;  ///< every eps skipped the band
  double growth = 0;     ///< max fitted / fitted at the first evaluated eps
  bool positive = false; ///< all evaluated constants positive and finite
  bool passed = false;
};

struct LemmaReport {
  ModelParams base;
  LemmaOptions options;
  std::vector<LemmaRow> rows;
  std::vector<LemmaVerdict> verdicts;  ///< tail, low, circular
  bool passed = false;
};

LemmaReport lemma_checks(const ModelParams& base, const LemmaOptions& opts = {});

// ---------------------------------------------------------------------------
// boundary-layer scaling of the remainder

struct ScalingParams {
  double k = 0.25;
  std::vector<double> eps_list = {0.1, 0.05, 0.02, 0.01};
  double window_start = 1.0;

  /// T_eps = log(1/eps^k)
  double horizon(double eps) const;
  /// eps^(1-k/alpha) log(1/eps^k)
  double scale(double eps, double alpha) const;
};

void validate(const ScalingParams& s, double alpha);

struct GridPolicy {
  std::size_t nx0 = 65;
  std::size_t nx_max = 1025;
  double courant = 0.5;       ///< dt ~ courant * dx
  double stabilization = 0.05;
};

struct SweepPoint {
  double eps = 0;
  double horizon = 0;
  std::size_t nx = 0, nt = 0, refinements = 0;
  double change = 0;  ///< relative change of sup_S at the last refinement
  std::vector<ProfilePoint> profile;
  bool window_empty = false;
  std::optional<double> sup_s;  ///< over [window_start, T_eps)
  double sup_s_full = 0;        ///< over (0, T_eps]
  double scale = 0;
  std::optional<double> ratio;
  double ratio_full = 0;
};

/// Scaling statistics of one choice of window.
struct ScalingSummary {
  bool complete = false;           ///< every eps has a value
  std::optional<double> fitted_exponent;
  std::string fit_error;
  std::optional<double> fitted_gamma;
  std::optional<double> ratio_spread;
  bool strictly_decreasing = false;
  bool passed = false;
};

struct SweepReport {
  ModelParams base;
  KinkFamily family;
  ScalingParams scaling;
  GridPolicy grids;
  double certificate = 0;        ///< sup |U_xxt|
  double ratio_limit = 10.0;
  std::vector<SweepPoint> per_eps;  ///< eps descending
  ScalingSummary window;            ///< the gated statistic
  ScalingSummary full;              ///< informational, window (0, T_eps]
  bool passed = false;
};

/// For each eps, solves the full and the hyperbolic problem on the same
/// kink data up to T_eps, refining nx by doubling until sup_S changes by at
/// most grids.stabilization. GridNotConverged names the eps that did not settle.
SweepReport boundary_layer_sweep(const ModelParams& base, const ScalingParams& scaling,
                                 const KinkFamily& family, const GridPolicy& grids = {},
                                 double ratio_limit = 10.0);

// ---------------------------------------------------------------------------
// integro-differential form against the full equation

struct MemoryExperimentOptions {
  std::size_t nx = 65;
  std::size_t nt = 64;
  double amplitude = 0.1;  ///< h0 = amplitude cos(pi x / ell), h1 = 0, zero flux
  double agreement_factor = 10.0;
};

struct MemoryReport {
  ModelParams params;
  MemoryParams memory;
  MemoryExperimentOptions options;
  double velocity_gap = 0;    ///< max |implied u_t(x,0) - h1|
  double diff_implied = 0;    ///< memory vs full equation started with the implied velocity
  double diff_given = 0;      ///< memory vs full equation started with h1
  double error_memory = 0;    ///< coarse/fine self-comparison of each run
  double error_full = 0;
  std::vector<ProfilePoint> profile_implied;  ///< sup_x difference per level
  std::vector<ProfilePoint> profile_given;
  bool agrees_implied = false;
  bool agrees_given = false;
  std::string finding;
};

MemoryReport memory_experiment(const ModelParams& p, const MemoryExperimentOptions& opts = {});

}  // namespace sglab
