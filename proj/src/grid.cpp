#include "mcz/grid.hpp"

#include <algorithm>
#include <cmath>

namespace mcz {

GridFunction::GridFunction(const Box& box, int levels, double fill) : box_(box), levels_(levels) {
  if (levels < 0 || levels > 24) throw std::invalid_argument("GridFunction: levels out of range");
  const std::size_t n = std::size_t{1} << levels;
  data_.assign(box.dim == 1 ? n : n * n, fill);
}

GridFunction GridFunction::map(const std::function<double(double)>& fn) const {
  GridFunction out = *this;
  for (double& v : out.data_) v = fn(v);
  return out;
}

GridFunction GridFunction::abs() const {
  GridFunction out = *this;
  for (double& v : out.data_) v = std::fabs(v);
  return out;
}

GridFunction GridFunction::pow(double e) const {
  const bool integer_exp = e == std::floor(e);
  GridFunction out = *this;
  for (double& v : out.data_) {
    if (v < 0.0 && !integer_exp)
      throw std::invalid_argument("GridFunction::pow: negative base with non-integer exponent");
    v = std::pow(v, e);
  }
  return out;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

double GridFunction::min_value() const {
  double m = data_.empty() ? 0.0 : data_[0];
  for (double v : data_) m = std::min(m, v);
  return m;
}

double GridFunction::max_value() const {
  double m = data_.empty() ? 0.0 : data_[0];
  for (double v : data_) m = std::max(m, v);
  return m;
}

static void require_compatible(const GridFunction& a, const GridFunction& b) {
  if (!a.compatible_with(b))
    throw std::invalid_argument("GridFunction: operands sampled on different grids");
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(const GridFunction& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] *= o.data_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : data_) v *= c;
  return *this;
}

GridFunction& GridFunction::operator+=(double c) {
  for (double& v : data_) v += c;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(GridFunction a, const GridFunction& b) { return a *= b; }
GridFunction operator*(GridFunction a, double c) { return a *= c; }
GridFunction operator*(double c, GridFunction a) { return a *= c; }

Cube dilate_cube(const DyadicCube& q, double t) {
  if (!(t >= 1.0)) throw std::invalid_argument("dilate_cube: t must be >= 1");
  Cube c;
  c.box = q.box;
  for (int a = 0; a < q.box.dim; ++a) {
    const double half = 0.5 * t * q.side();
    c.lo[a] = std::max(q.center(a) - half, -q.box.halfwidth);
    c.hi[a] = std::min(q.center(a) + half, q.box.halfwidth);
  }
  return c;
}

std::array<IndexRange, 2> cube_cells(const GridFunction& f, const DyadicCube& q) {
  if (!(q.box == f.box())) throw std::invalid_argument("cube_cells: cube from a different box");
  if (q.level > f.levels())
    throw resolution_error("cube_cells: cube is finer than the grid resolution");
  const int shift = f.levels() - q.level;
  std::array<IndexRange, 2> r{};
  for (int a = 0; a < f.dim(); ++a) {
    r[a].lo = q.kappa[a] << shift;
    r[a].hi = (q.kappa[a] + 1) << shift;
  }
  if (f.dim() == 1) r[1] = IndexRange{0, 1};
  return r;
}

namespace detail {

// Boundaries get a sliver of slack so cube edges that coincide with cell
// edges resolve consistently.
IndexRange interval_cells(double lo, double hi, double R, double h, std::int64_t n) {
  const double eps = 1e-9 * h;
  std::int64_t i0 = static_cast<std::int64_t>(std::ceil((lo + R) / h - 0.5 - eps));
  std::int64_t i1 = static_cast<std::int64_t>(std::floor((hi + R) / h - 0.5 + eps)) + 1;
  i0 = std::max<std::int64_t>(i0, 0);
  i1 = std::min(i1, n);
  if (i1 < i0) i1 = i0;
  return IndexRange{i0, i1};
}

}  // namespace detail

std::array<IndexRange, 2> cube_cells(const GridFunction& f, const Cube& c) {
  if (!(c.box == f.box())) throw std::invalid_argument("cube_cells: cube from a different box");
  std::array<IndexRange, 2> r{};
  for (int a = 0; a < f.dim(); ++a)
    r[a] = detail::interval_cells(c.lo[a], c.hi[a], f.box().halfwidth, f.cell_size(),
                                  f.cells_per_axis());
  if (f.dim() == 1) r[1] = IndexRange{0, 1};
  return r;
}

std::int64_t cube_cell_count(const GridFunction& f, const DyadicCube& q) {
  const auto r = cube_cells(f, q);
  return f.dim() == 1 ? r[0].count() : r[0].count() * r[1].count();
}

double cube_discrete_measure(const GridFunction& f, const DyadicCube& q) {
  return static_cast<double>(cube_cell_count(f, q)) * f.cell_measure();
}

namespace {
const auto identity = [](double v) { return v; };
}

double cube_average(const GridFunction& f, const DyadicCube& q) {
  const std::int64_t n = cube_cell_count(f, q);
  return cube_transform_sum(f, q, identity) / static_cast<double>(n);
}

double cube_average(const GridFunction& f, const Cube& c) {
  const auto r = cube_cells(f, c);
  const std::int64_t n = f.dim() == 1 ? r[0].count() : r[0].count() * r[1].count();
  if (n == 0) return 0.0;
  return cube_transform_sum(f, c, identity) / static_cast<double>(n);
}

double cube_integral(const GridFunction& f, const DyadicCube& q) {
  return cube_transform_sum(f, q, identity) * f.cell_measure();
}

double cube_integral(const GridFunction& f, const Cube& c) {
  return cube_transform_sum(f, c, identity) * f.cell_measure();
}

double box_integral(const GridFunction& f) {
  DyadicCube whole(f.box(), 0, 0, 0);
  return cube_integral(f, whole);
}

std::vector<DyadicCube> CubeFamily::dyadic_cubes() const {
  std::vector<DyadicCube> out;
  out.reserve(static_cast<std::size_t>(dyadic_count()));
  for (int v = 0; v <= max_level; ++v) {
    const std::int64_t n = std::int64_t{1} << v;
    if (box.dim == 1) {
      for (std::int64_t k = 0; k < n; ++k) out.emplace_back(box, v, k);
    } else {
      for (std::int64_t k0 = 0; k0 < n; ++k0)
        for (std::int64_t k1 = 0; k1 < n; ++k1) out.emplace_back(box, v, k0, k1);
    }
  }
  return out;
}

CubeFamily enumerate_cubes(const Box& box, int max_level, double dilation) {
  return CubeFamily(box, max_level, dilation);
}

DyadicCube cube_containing(const Box& box, int cube_level, int grid_level,
                           std::int64_t i, std::int64_t j) {
  if (cube_level > grid_level)
    throw resolution_error("cube_containing: cube level finer than grid level");
  const int shift = grid_level - cube_level;
  return DyadicCube(box, cube_level, i >> shift, box.dim == 2 ? (j >> shift) : 0);
}

}  // namespace mcz
