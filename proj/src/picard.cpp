#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sglab/pde_lab.hpp"

namespace sglab {

namespace {

// 8-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 8> kNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// Product-trapezoid weights of one mode: the forcing is linear on each step,
// so for lag m the step contributes A[m] * F(left) + B[m] * F(right) with
//   A[m] = int_0^dt K(m dt - s) (1 - s/dt) ds,  B[m] = int_0^dt K(m dt - s) s/dt ds.
struct LagWeights {
  std::vector<double> left, right;  // indexed by lag, 1..nt
};

template <class Kernel>
LagWeights lag_weights(Kernel&& K, double rate, std::size_t nt, double dt) {
  LagWeights w;
  w.left.assign(nt + 1, 0.0);
  w.right.assign(nt + 1, 0.0);
  // resolve the fastest exponential e^{-2 h s} within each step
  const int panels = static_cast<int>(std::clamp(std::ceil(2.0 * rate * dt), 1.0, 256.0));
  const double width = dt / panels;
  for (std::size_t m = 1; m <= nt; ++m) {
    double a = 0, b = 0;
    for (int q = 0; q < panels; ++q) {
      const double s0 = q * width;
      for (std::size_t g = 0; g < kNodes.size(); ++g) {
        const double s = s0 + 0.5 * width * (kNodes[g] + 1.0);
        const double k = K(static_cast<double>(m) * dt - s) * 0.5 * width * kWeights[g];
        a += k * (1.0 - s / dt);
        b += k * (s / dt);
      }
    }
    w.left[m] = a;
    w.right[m] = b;
  }
  return w;
}

}  // namespace

PicardResult picard_remainder(const ModelParams& p, const ReferenceSolution& ref,
                              const Grid& g, const TruncationPolicy& policy,
                              std::size_t max_iter, double tol) {
  validate_for_solver(p);
  validate(policy);
  require(same_grid(ref.u.grid(), g) && same_grid(ref.u_xxt.grid(), g),
          ErrorCode::GridMismatch, "reference fields must live on the Picard grid");
  require(std::abs(g.ell - p.ell) <= 1e-12 * p.ell, ErrorCode::InvalidArgument,
          "grid length differs from ell");
  require(max_iter >= 1, ErrorCode::InvalidArgument, "max_iter must be >= 1");
  require(tol > 0, ErrorCode::InvalidArgument, "tol must be positive");

  const std::size_t nx = g.nx, levels = g.levels();
  const std::size_t modes = std::min<std::size_t>(policy.max_modes, nx - 1);
  const double dt = g.dt;

  // cos(gamma_n x_i), n = 0..modes
  std::vector<std::vector<double>> cosines(modes + 1, std::vector<double>(nx));
  for (std::size_t n = 0; n <= modes; ++n)
    for (std::size_t i = 0; i < nx; ++i)
      cosines[n][i] = std::cos(static_cast<double>(n) * std::numbers::pi * g.x(i) / p.ell);
  std::vector<double> quad(nx, g.dx);
  quad.front() = quad.back() = 0.5 * g.dx;

  std::vector<LagWeights> weights;
  weights.reserve(modes + 1);
  weights.push_back(lag_weights([&](double s) { return zero_mode_kernel(p.alpha, s); },
                                p.alpha, g.nt, dt));
  for (std::size_t n = 1; n <= modes; ++n) {
    const ModeData md = mode_data(p, n);
    weights.push_back(lag_weights([md](double s) { return kernel_mode(md, s); }, md.h_n, g.nt, dt));
  }

  PicardResult out;
  out.modes = modes;
  out.d = Field(g);
  // coefficient tables, [level][mode]
  std::vector<double> forcing(levels * (modes + 1)), response(levels * (modes + 1));
  Field next(g);

  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (std::size_t k = 0; k < levels; ++k) {
      for (std::size_t n = 0; n <= modes; ++n) {
        double acc = 0;
        for (std::size_t i = 0; i < nx; ++i) {
          const double U = ref.u.at(i, k);
          const double F = std::sin(out.d.at(i, k) + U) - std::sin(U) - p.eps * ref.u_xxt.at(i, k);
          acc += quad[i] * F * cosines[n][i];
        }
        forcing[k * (modes + 1) + n] = (n == 0 ? 1.0 : 2.0) / p.ell * acc;
      }
    }
    std::fill(response.begin(), response.end(), 0.0);
    for (std::size_t k = 1; k < levels; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t lag = k - j;
        for (std::size_t n = 0; n <= modes; ++n) {
          response[k * (modes + 1) + n] -= forcing[j * (modes + 1) + n] * weights[n].left[lag] +
                                           forcing[(j + 1) * (modes + 1) + n] * weights[n].right[lag];
        }
      }
    }
    double increment = 0;
    for (std::size_t k = 0; k < levels; ++k) {
      for (std::size_t i = 0; i < nx; ++i) {
        double v = 0;
        for (std::size_t n = 0; n <= modes; ++n) v += response[k * (modes + 1) + n] * cosines[n][i];
        if (!std::isfinite(v)) fail(ErrorCode::Divergence, "Picard iterate is not finite");
        next.at(i, k) = v;
        increment = std::max(increment, std::abs(v - out.d.at(i, k)));
      }
    }
    std::swap(out.d, next);
    out.increments.push_back(increment);
    out.iterations = it;
    if (increment < tol) return out;
  }
  std::ostringstream os;
  os << "Picard iteration did not reach tol=" << tol << " in " << max_iter
     << " iterations (last increment " << out.increments.back() << ")";
  fail(ErrorCode::NoConvergence, os.str());
}

}  // namespace sglab
