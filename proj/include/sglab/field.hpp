#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sglab/exact_solutions.hpp"

namespace sglab {

/// Uniform space-time lattice on [0, ell] x [0, horizon].
struct Grid {
  std::size_t nx = 0;  ///< spatial nodes, including both ends
  std::size_t nt = 0;  ///< time steps; levels are 0..nt
  double ell = 0;
  double horizon = 0;
  double dx = 0;
  double dt = 0;

  static Grid make(double ell, double horizon, std::size_t nx, std::size_t nt);

  double x(std::size_t i) const { return static_cast<double>(i) * dx; }
  double t(std::size_t k) const { return static_cast<double>(k) * dt; }
  std::size_t levels() const { return nt + 1; }
};

bool same_grid(const Grid& a, const Grid& b);

/// Scalar samples on a Grid, stored level by level.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, double fill = 0.0);

  const Grid& grid() const { return grid_; }
  double& at(std::size_t i, std::size_t k) { return values_[k * grid_.nx + i]; }
  double at(std::size_t i, std::size_t k) const { return values_[k * grid_.nx + i]; }

  std::span<double> level(std::size_t k) {
    return {values_.data() + k * grid_.nx, grid_.nx};
  }
  std::span<const double> level(std::size_t k) const {
    return {values_.data() + k * grid_.nx, grid_.nx};
  }
  std::span<const double> values() const { return values_; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

Field sample(const Grid& grid, const SpaceTimeFn& fn);

/// d = u - U on a shared grid; GridMismatch otherwise.
Field remainder_field(const Field& u, const Field& U);

struct ProfilePoint {
  double t = 0;
  double value = 0;
};

/// S(t) = max_i |d(x_i, t)| per time level.
std::vector<ProfilePoint> sup_profile(const Field& d);

/// Largest |a - b| over the nodes shared by a fine and a coarse grid whose
/// spacings differ by an integer factor in both directions.
double max_diff_on_coarse(const Field& coarse, const Field& fine);

/// CSV interchange: a `#` metadata line, a units line, a header row
/// `x,t=<t0>,t=<t1>,...`, then one row per space node. Values use 17
/// significant digits. Levels 0, save_every, 2*save_every, ... and the final
/// level are written.
void write_csv(const Field& f, std::ostream& os, std::size_t save_every = 1);
void write_csv(const Field& f, const std::string& path, std::size_t save_every = 1);

/// Inverse of write_csv for files whose saved levels are uniformly spaced.
Field read_csv(std::istream& is);

}  // namespace sglab
