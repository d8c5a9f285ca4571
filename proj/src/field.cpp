#include "sglab/field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace sglab {

namespace {

std::string fmt17(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

double parse_double(const std::string& s) {
  double v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && *b == ' ') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr == b)
    fail(ErrorCode::Io, "malformed number in field CSV: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

Grid Grid::make(double ell, double horizon, std::size_t nx, std::size_t nt) {
  require(std::isfinite(ell) && ell > 0, ErrorCode::InvalidArgument, "grid length must be positive");
  require(std::isfinite(horizon) && horizon > 0, ErrorCode::InvalidArgument,
          "grid horizon must be positive");
  require(nx >= 3, ErrorCode::InvalidArgument, "grid needs nx >= 3");
  require(nt >= 1, ErrorCode::InvalidArgument, "grid needs nt >= 1");
  Grid g;
  g.nx = nx;
  g.nt = nt;
  g.ell = ell;
  g.horizon = horizon;
  g.dx = ell / static_cast<double>(nx - 1);
  g.dt = horizon / static_cast<double>(nt);
  return g;
}

bool same_grid(const Grid& a, const Grid& b) {
  return a.nx == b.nx && a.nt == b.nt && a.ell == b.ell && a.horizon == b.horizon;
}

Field::Field(const Grid& grid, double fill)
    : grid_(grid), values_(grid.nx * grid.levels(), fill) {}

Field sample(const Grid& grid, const SpaceTimeFn& fn) {
  Field f(grid);
  for (std::size_t k = 0; k < grid.levels(); ++k)
    for (std::size_t i = 0; i < grid.nx; ++i) f.at(i, k) = fn(grid.x(i), grid.t(k));
  return f;
}

Field remainder_field(const Field& u, const Field& U) {
  require(same_grid(u.grid(), U.grid()), ErrorCode::GridMismatch,
          "remainder_field: fields live on different grids");
  Field d(u.grid());
  const auto a = u.values();
  const auto b = U.values();
  for (std::size_t k = 0; k < d.grid().levels(); ++k) {
    auto out = d.level(k);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::size_t j = k * d.grid().nx + i;
      out[i] = a[j] - b[j];
    }
  }
  return d;
}

std::vector<ProfilePoint> sup_profile(const Field& d) {
  std::vector<ProfilePoint> out;
  out.reserve(d.grid().levels());
  for (std::size_t k = 0; k < d.grid().levels(); ++k) {
    double s = 0;
    for (double v : d.level(k)) s = std::max(s, std::abs(v));
    out.push_back({d.grid().t(k), s});
  }
  return out;
}

double max_diff_on_coarse(const Field& coarse, const Field& fine) {
  const Grid& c = coarse.grid();
  const Grid& f = fine.grid();
  require(c.ell == f.ell && c.horizon == f.horizon, ErrorCode::GridMismatch,
          "nested comparison needs the same domain");
  require((f.nx - 1) % (c.nx - 1) == 0 && f.nt % c.nt == 0, ErrorCode::GridMismatch,
          "fine grid is not an integer refinement of the coarse grid");
  const std::size_t sx = (f.nx - 1) / (c.nx - 1);
  const std::size_t st = f.nt / c.nt;
  double m = 0;
  for (std::size_t k = 0; k < c.levels(); ++k)
    for (std::size_t i = 0; i < c.nx; ++i)
      m = std::max(m, std::abs(coarse.at(i, k) - fine.at(i * sx, k * st)));
  return m;
}

void write_csv(const Field& f, std::ostream& os, std::size_t save_every) {
  require(save_every >= 1, ErrorCode::InvalidArgument, "save_every must be >= 1");
  const Grid& g = f.grid();
  std::vector<std::size_t> levels;
  for (std::size_t k = 0; k <= g.nt; k += save_every) levels.push_back(k);
  if (levels.back() != g.nt) levels.push_back(g.nt);

  os << "# sglab-field nx=" << g.nx << " nt=" << g.nt << " ell=" << fmt17(g.ell)
     << " horizon=" << fmt17(g.horizon) << " dx=" << fmt17(g.dx)
     << " dt=" << fmt17(g.dt) << " save_every=" << save_every << '\n';
  os << "# units: x in length units, t in time units, values are phases in radians\n";
  os << "x";
  for (std::size_t k : levels) os << ",t=" << fmt17(g.t(k));
  os << '\n';
  for (std::size_t i = 0; i < g.nx; ++i) {
    os << fmt17(g.x(i));
    for (std::size_t k : levels) os << ',' << fmt17(f.at(i, k));
    os << '\n';
  }
}

void write_csv(const Field& f, const std::string& path, std::size_t save_every) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::Io, "cannot open " + path + " for writing");
  write_csv(f, os, save_every);
  if (!os) fail(ErrorCode::Io, "write failed for " + path);
}

Field read_csv(std::istream& is) {
  std::string line;
  double ell = 0, horizon = 0;
  std::size_t nx = 0;
  while (std::getline(is, line) && !line.empty() && line[0] == '#') {
    for (const auto& tok : split(line, ' ')) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "nx") nx = static_cast<std::size_t>(parse_double(val));
      if (key == "ell") ell = parse_double(val);
      if (key == "horizon") horizon = parse_double(val);
    }
  }
  if (nx == 0 || ell <= 0 || horizon <= 0)
    fail(ErrorCode::Io, "field CSV lacks grid metadata");
  const auto header = split(line, ',');
  if (header.size() < 3 || header[0] != "x") fail(ErrorCode::Io, "field CSV header malformed");
  std::vector<double> times;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].rfind("t=", 0) != 0) fail(ErrorCode::Io, "field CSV header malformed");
    times.push_back(parse_double(header[c].substr(2)));
  }
  const double step = times[1] - times[0];
  for (std::size_t c = 1; c < times.size(); ++c)
    if (std::abs(times[c] - times[c - 1] - step) > 1e-9 * std::max(1.0, horizon))
      fail(ErrorCode::Io, "saved time levels are not uniformly spaced");
  const double saved_horizon = times.back();
  Field f(Grid::make(ell, saved_horizon, nx, times.size() - 1));
  for (std::size_t i = 0; i < nx; ++i) {
    if (!std::getline(is, line)) fail(ErrorCode::Io, "field CSV truncated");
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) fail(ErrorCode::Io, "field CSV row has wrong width");
    for (std::size_t c = 1; c < cells.size(); ++c) f.at(i, c - 1) = parse_double(cells[c]);
  }
  return f;
}

}  // namespace sglab
