#include "sglab/spectral_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sglab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSmallArg = 1e-6;

// Neumaier compensated accumulator; the kernel series can run to 10^7 terms.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

void check_position(const ModelParams& p, double x, const char* name) {
  const double slack = 1e-12 * p.ell;
  if (!(x >= -slack && x <= p.ell + slack)) {
    std::ostringstream os;
    os << name << "=" << x << " outside [0, ell]";
    fail(ErrorCode::PreconditionViolation, os.str());
  }
}

}  // namespace

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Hyperbolic: return "hyperbolic";
    case Regime::Trigonometric: return "trigonometric";
    case Regime::Degenerate: return "degenerate";
  }
  return "unknown";
}

ModeData mode_data(const ModelParams& p, std::size_t n) {
  require(n >= 1, ErrorCode::PreconditionViolation, "mode index must be >= 1");
  ModeData m;
  m.n = n;
  m.gamma_n = static_cast<double>(n) * kPi / p.ell;
  m.h_n = 0.5 * (p.alpha + p.eps * m.gamma_n * m.gamma_n);
  // factored form keeps the sign exact near the regime boundary
  m.disc = (m.h_n - m.gamma_n) * (m.h_n + m.gamma_n);
  if (m.disc > 0)
    m.regime = Regime::Hyperbolic;
  else if (m.disc < 0)
    m.regime = Regime::Trigonometric;
  else
    m.regime = Regime::Degenerate;
  m.freq = std::sqrt(std::abs(m.disc));
  return m;
}

RegimeSplit regime_split(const ModelParams& p) {
  RegimeSplit s;
  const double ae = p.alpha * p.eps;
  if (!(p.eps > 0) || ae >= 1) return s;
  const double root = std::sqrt(1.0 - ae);
  // 1 - sqrt(1 - ae) rewritten without cancellation
  s.lower = p.ell * p.alpha / (kPi * (1.0 + root));
  s.upper = p.ell * (1.0 + root) / (kPi * p.eps);
  s.n1 = static_cast<std::size_t>(std::floor(s.lower)) + 1;
  const double up = std::ceil(s.upper) - 1.0;
  s.n2 = up > 0 ? static_cast<std::size_t>(up) : 0;
  s.defined = true;
  return s;
}

double kernel_mode(const ModeData& m, double t) {
  require(t >= 0, ErrorCode::PreconditionViolation, "kernel time must be >= 0");
  if (t == 0) return 0.0;
  const double z = m.freq * t;
  switch (m.regime) {
    case Regime::Hyperbolic: {
      if (z < kSmallArg) return std::exp(-m.h_n * t) * t * (1.0 + z * z / 6.0);
      // h - omega = gamma^2 / (h + omega) avoids cancellation for large h
      const double gap = m.gamma_n * m.gamma_n / (m.h_n + m.freq);
      return std::exp(-gap * t) * (-std::expm1(-2.0 * z)) / (2.0 * m.freq);
    }
    case Regime::Trigonometric: {
      if (z < kSmallArg) return std::exp(-m.h_n * t) * t * (1.0 - z * z / 6.0);
      return std::exp(-m.h_n * t) * std::sin(z) / m.freq;
    }
    case Regime::Degenerate:
      return std::exp(-m.h_n * t) * t;
  }
  return 0.0;
}

double kernel_mode(const ModelParams& p, std::size_t n, double t) {
  return kernel_mode(mode_data(p, n), t);
}

std::size_t tail_start(const ModelParams& p) {
  require(p.eps > 0, ErrorCode::PreconditionViolation,
          "the kernel series has no hyperbolic tail when eps == 0");
  const RegimeSplit s = regime_split(p);
  if (s.defined) return s.n2;
  // alpha*eps >= 1: every mode is hyperbolic; gamma/h decreases past sqrt(alpha/eps)
  const double peak = std::sqrt(p.alpha / p.eps) * p.ell / kPi;
  const double n0 = std::ceil(peak) - 1.0;
  return n0 > 0 ? static_cast<std::size_t>(n0) : 0;
}

double tail_bound(const ModelParams& p, std::size_t N, double t) {
  require(t > 0, ErrorCode::PreconditionViolation, "tail_bound needs t > 0");
  const std::size_t start = std::max<std::size_t>(1, tail_start(p));
  if (N < start) {
    std::ostringstream os;
    os << "tail_bound: N=" << N << " below the hyperbolic tail start " << start;
    fail(ErrorCode::PreconditionViolation, os.str());
  }
  const ModeData m = mode_data(p, N + 1);
  const double c = m.gamma_n / m.h_n;
  if (!(c < 1)) return std::numeric_limits<double>::infinity();
  const double rate = m.gamma_n * m.gamma_n / (2.0 * m.h_n);
  const double K = p.ell * p.ell / (p.eps * kPi * kPi * std::sqrt(1.0 - c * c));
  const double Nd = static_cast<double>(N);
  // terms below M are capped by t, the rest by K/n^2
  const double M = std::max(1.0, std::ceil(std::sqrt(K / t)));
  const double capped = std::max(0.0, M - 1.0 - Nd);
  const double first_sq = std::max(Nd + 1.0, M);
  const double bracket = t * capped + K / (first_sq - 1.0);
  return std::exp(-rate * t) * bracket;
}

std::size_t modes_needed(const ModelParams& p, double t,
                         const TruncationPolicy& policy) {
  validate(policy);
  const std::size_t lo = std::max<std::size_t>(1, tail_start(p));
  auto report = [&](double bound) {
    std::ostringstream os;
    os << "tail bound " << bound << " above tolerance " << policy.tail_tol
       << " at max_modes=" << policy.max_modes << " (t=" << t << ")";
    fail(ErrorCode::TailNotConverged, os.str());
  };
  if (policy.max_modes < lo) report(std::numeric_limits<double>::infinity());
  if (tail_bound(p, lo, t) < policy.tail_tol) return lo;
  const double at_cap = tail_bound(p, policy.max_modes, t);
  if (!(at_cap < policy.tail_tol)) report(at_cap);
  std::size_t bad = lo, good = policy.max_modes;
  while (good - bad > 1) {
    const std::size_t mid = bad + (good - bad) / 2;
    if (tail_bound(p, mid, t) < policy.tail_tol)
      good = mid;
    else
      bad = mid;
  }
  return good;
}

SeriesValue theta_sum(const ModelParams& p, double x, double xi, double t,
                      const TruncationPolicy& policy) {
  check_position(p, x, "x");
  check_position(p, xi, "xi");
  require(t >= 0, ErrorCode::PreconditionViolation, "theta_sum needs t >= 0");
  if (t == 0) return {};
  const std::size_t N = modes_needed(p, t, policy);
  const double kx = kPi * x / p.ell;
  const double kxi = kPi * xi / p.ell;
  CompensatedSum acc;
  for (std::size_t n = 1; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    acc.add(kernel_mode(p, n, t) * std::cos(nd * kxi) * std::cos(nd * kx));
  }
  return {acc.value(), tail_bound(p, N, t), N};
}

SeriesValue kernel_sum(const ModelParams& p, double t,
                       const TruncationPolicy& policy, std::size_t first) {
  require(first >= 1, ErrorCode::PreconditionViolation, "first mode must be >= 1");
  require(t > 0, ErrorCode::PreconditionViolation, "kernel_sum needs t > 0");
  const std::size_t N = std::max(modes_needed(p, t, policy), first - 1);
  CompensatedSum acc;
  for (std::size_t n = first; n <= N; ++n) acc.add(kernel_mode(p, n, t));
  return {acc.value(), tail_bound(p, N, t), N >= first ? N - first + 1 : 0};
}

double zero_mode_kernel(double alpha, double t) {
  return -std::expm1(-alpha * t) / alpha;
}

SeriesValue green(const ModelParams& p, double x, double xi, double t,
                  const TruncationPolicy& policy) {
  require(t >= 0, ErrorCode::PreconditionViolation, "green needs t >= 0");
  if (t == 0) {
    check_position(p, x, "x");
    check_position(p, xi, "xi");
    return {};
  }
  const SeriesValue theta = theta_sum(p, x, xi, t, policy);
  const double scale = 2.0 / p.ell;
  return {zero_mode_kernel(p.alpha, t) / p.ell + scale * theta.value,
          scale * theta.tail, theta.modes};
}

double envelope_rate(const ModelParams& p, bool use_min) {
  const double a = p.alpha / 4.0;
  const double b = p.alpha * p.ell * p.ell / (2.0 * kPi * kPi);
  return use_min ? std::min(a, b) : std::max(a, b);
}

std::vector<DecayPoint> decay_profile(const ModelParams& p,
                                      const std::vector<double>& t_grid,
                                      const TruncationPolicy& policy) {
  validate_for_estimates(p);
  const double m = envelope_rate(p, false);
  const double m_min = envelope_rate(p, true);
  std::vector<DecayPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    require(t >= 1, ErrorCode::PreconditionViolation,
            "decay_profile is defined for t >= 1");
    const SeriesValue s = kernel_sum(p, t, policy);
    DecayPoint d;
    d.t = t;
    d.tail = s.tail;
    d.modes = s.modes;
    d.sum_h = s.value + s.tail;
    d.envelope = std::exp(-m * t);
    d.ratio = d.sum_h * std::exp(m * t);
    d.envelope_min = std::exp(-m_min * t);
    d.ratio_min = d.sum_h * std::exp(m_min * t);
    out.push_back(d);
  }
  return out;
}

double circular_difference(const ModelParams& p, std::size_t n, double t) {
  validate_for_solver(p);
  require(t >= 1, ErrorCode::PreconditionViolation,
          "circular_difference is defined for t >= 1");
  const ModeData m = mode_data(p, n);
  if (m.regime != Regime::Trigonometric) {
    std::ostringstream os;
    os << "mode " << n << " is " << to_string(m.regime)
       << ", outside the trigonometric band";
    fail(ErrorCode::PreconditionViolation, os.str());
  }
  const double half_alpha = 0.5 * p.alpha;
  const double w0_sq = (m.gamma_n - half_alpha) * (m.gamma_n + half_alpha);
  require(w0_sq > 0, ErrorCode::PreconditionViolation,
          "reference frequency sqrt(gamma_n^2 - alpha^2/4) is not real");
  const double w0 = std::sqrt(w0_sq);
  const double h1 = 0.5 * (p.alpha + p.eps * kPi * kPi / (p.ell * p.ell));
  return std::exp(-m.h_n * t) * std::sin(m.freq * t) / m.freq -
         std::exp(-h1 * t) * std::sin(w0 * t) / w0;
}

}  // namespace sglab
