#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcz {

// Raised when an operation needs finer sampling than a grid carries.
struct resolution_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Sampling domain [-halfwidth, halfwidth]^dim with dim in {1, 2}.
struct Box {
  int dim = 1;
  double halfwidth = 1.0;

  Box() = default;
  Box(int d, double R) : dim(d), halfwidth(R) {
    if (d != 1 && d != 2) throw std::invalid_argument("Box: dim must be 1 or 2");
    if (!(R > 0.0)) throw std::invalid_argument("Box: halfwidth must be positive");
  }

  double side() const { return 2.0 * halfwidth; }
  double volume() const { return dim == 1 ? side() : side() * side(); }
  bool operator==(const Box&) const = default;
};

// Dyadic subcube: level v splits each axis of the box into 2^v parts.
struct DyadicCube {
  Box box;
  int level = 0;
  std::array<std::int64_t, 2> kappa{0, 0};

  DyadicCube() = default;
  DyadicCube(const Box& b, int v, std::int64_t k0, std::int64_t k1 = 0)
      : box(b), level(v), kappa{k0, k1} {
    if (v < 0) throw std::invalid_argument("DyadicCube: negative level");
    const std::int64_t n = std::int64_t{1} << v;
    for (int a = 0; a < box.dim; ++a)
      if (kappa[a] < 0 || kappa[a] >= n)
        throw std::invalid_argument("DyadicCube: index out of range");
  }

  double side() const { return box.side() * std::ldexp(1.0, -level); }
  double corner(int axis) const { return -box.halfwidth + static_cast<double>(kappa[axis]) * side(); }
  double center(int axis) const { return corner(axis) + 0.5 * side(); }
  double measure() const { return box.dim == 1 ? side() : side() * side(); }
};

// Axis-aligned cube after dilation and clipping to the box; no longer dyadic.
struct Cube {
  Box box;
  std::array<double, 2> lo{0, 0};
  std::array<double, 2> hi{0, 0};

  double measure() const {
    double m = 1.0;
    for (int a = 0; a < box.dim; ++a) m *= (hi[a] - lo[a]);
    return m;
  }
};

inline Cube as_cube(const DyadicCube& q) {
  Cube c;
  c.box = q.box;
  for (int a = 0; a < q.box.dim; ++a) {
    c.lo[a] = q.corner(a);
    c.hi[a] = q.corner(a) + q.side();
  }
  return c;
}

// Concentric dilation tQ, clipped to the box (measure is recomputed from the
// clipped extent).  t >= 1.
Cube dilate_cube(const DyadicCube& q, double t);

// Half-open range of sample indices along one axis.
struct IndexRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t count() const { return hi > lo ? hi - lo : 0; }
};

// Uniform midpoint samples of a function on a box: 2^levels cells per axis,
// values at cell centers, row-major (axis 0 slowest).
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(const Box& box, int levels, double fill = 0.0);

  template <class Fn>
  static GridFunction sample(const Box& box, int levels, Fn&& fn) {
    GridFunction g(box, levels);
    const std::int64_t n = g.cells_per_axis();
    if (box.dim == 1) {
      for (std::int64_t i = 0; i < n; ++i) g.data_[static_cast<std::size_t>(i)] = fn(g.coord(0, i));
    } else {
      std::size_t idx = 0;
      for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j, ++idx)
          g.data_[idx] = fn(g.coord(0, i), g.coord(1, j));
    }
    return g;
  }

  const Box& box() const { return box_; }
  int dim() const { return box_.dim; }
  int levels() const { return levels_; }
  std::int64_t cells_per_axis() const { return std::int64_t{1} << levels_; }
  double cell_size() const { return box_.side() / static_cast<double>(cells_per_axis()); }
  double cell_measure() const { return box_.dim == 1 ? cell_size() : cell_size() * cell_size(); }
  std::size_t size() const { return data_.size(); }

  double coord(int axis, std::int64_t i) const {
    (void)axis;
    return -box_.halfwidth + (static_cast<double>(i) + 0.5) * cell_size();
  }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double at(std::int64_t i, std::int64_t j) const {
    return data_[static_cast<std::size_t>(i * cells_per_axis() + j)];
  }
  double& at(std::int64_t i, std::int64_t j) {
    return data_[static_cast<std::size_t>(i * cells_per_axis() + j)];
  }

  const std::vector<double>& samples() const { return data_; }
  std::vector<double>& samples() { return data_; }

  bool compatible_with(const GridFunction& o) const {
    return box_ == o.box_ && levels_ == o.levels_;
  }

  GridFunction map(const std::function<double(double)>& fn) const;
  GridFunction abs() const;
  // Samplewise power; negative bases are rejected unless e is an integer.
  GridFunction pow(double e) const;

  double max_abs() const;
  double min_value() const;
  double max_value() const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(const GridFunction& o);
  GridFunction& operator*=(double c);
  GridFunction& operator+=(double c);

 private:
  Box box_;
  int levels_ = 0;
  std::vector<double> data_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(GridFunction a, const GridFunction& b);
GridFunction operator*(GridFunction a, double c);
GridFunction operator*(double c, GridFunction a);

// Sample-index ranges covered by a cube (cells whose centers lie inside).
// For a dyadic cube at level v <= L this is an exact aligned block; finer
// cubes than the grid raise resolution_error.
std::array<IndexRange, 2> cube_cells(const GridFunction& f, const DyadicCube& q);
std::array<IndexRange, 2> cube_cells(const GridFunction& f, const Cube& c);

// Count of samples inside, and the discrete measure count * h^dim that all
// integrals below are taken against.
std::int64_t cube_cell_count(const GridFunction& f, const DyadicCube& q);
double cube_discrete_measure(const GridFunction& f, const DyadicCube& q);

namespace detail {

// Cells whose centers lie in [lo, hi] on an axis with n cells of size h over
// [-R, R].  Shared by cube_cells and the point-in-cube tests so membership is
// decided once, with the same boundary slack everywhere.
IndexRange interval_cells(double lo, double hi, double R, double h, std::int64_t n);

// Sum over a dyadic-aligned block by recursive halving.  The fixed
// association tree makes the parent sum literally equal to the sum of its
// children's sums, so nested-average identities hold to the last bit.
template <class Fn>
double dyadic_sum_1d(const GridFunction& f, std::int64_t lo, std::int64_t hi, Fn&& fn) {
  if (hi - lo == 1) return fn(f[static_cast<std::size_t>(lo)]);
  const std::int64_t mid = lo + (hi - lo) / 2;
  return dyadic_sum_1d(f, lo, mid, fn) + dyadic_sum_1d(f, mid, hi, fn);
}

template <class Fn>
double dyadic_sum_2d(const GridFunction& f, std::int64_t i0, std::int64_t i1,
                     std::int64_t j0, std::int64_t j1, Fn&& fn) {
  if (i1 - i0 == 1 && j1 - j0 == 1) return fn(f.at(i0, j0));
  if (i1 - i0 == 1) {
    const std::int64_t jm = j0 + (j1 - j0) / 2;
    return dyadic_sum_2d(f, i0, i1, j0, jm, fn) + dyadic_sum_2d(f, i0, i1, jm, j1, fn);
  }
  const std::int64_t im = i0 + (i1 - i0) / 2;
  if (j1 - j0 == 1)
    return dyadic_sum_2d(f, i0, im, j0, j1, fn) + dyadic_sum_2d(f, im, i1, j0, j1, fn);
  const std::int64_t jm = j0 + (j1 - j0) / 2;
  return (dyadic_sum_2d(f, i0, im, j0, jm, fn) + dyadic_sum_2d(f, i0, im, jm, j1, fn)) +
         (dyadic_sum_2d(f, im, i1, j0, jm, fn) + dyadic_sum_2d(f, im, i1, jm, j1, fn));
}

}  // namespace detail

// Sum of fn(sample) over the cells of a dyadic cube (dyadic association
// order) or of a clipped cube (row-major order).
template <class Fn>
double cube_transform_sum(const GridFunction& f, const DyadicCube& q, Fn&& fn) {
  const auto r = cube_cells(f, q);
  if (f.dim() == 1) return detail::dyadic_sum_1d(f, r[0].lo, r[0].hi, fn);
  return detail::dyadic_sum_2d(f, r[0].lo, r[0].hi, r[1].lo, r[1].hi, fn);
}

template <class Fn>
double cube_transform_sum(const GridFunction& f, const Cube& c, Fn&& fn) {
  const auto r = cube_cells(f, c);
  double s = 0.0;
  if (f.dim() == 1) {
    for (std::int64_t i = r[0].lo; i < r[0].hi; ++i) s += fn(f[static_cast<std::size_t>(i)]);
  } else {
    for (std::int64_t i = r[0].lo; i < r[0].hi; ++i)
      for (std::int64_t j = r[1].lo; j < r[1].hi; ++j) s += fn(f.at(i, j));
  }
  return s;
}

// Mean of the samples whose cell centers lie in the cube.
double cube_average(const GridFunction& f, const DyadicCube& q);
double cube_average(const GridFunction& f, const Cube& c);

// h^dim * (sum of samples in the cube): the discrete integral.
double cube_integral(const GridFunction& f, const DyadicCube& q);
double cube_integral(const GridFunction& f, const Cube& c);

// Discrete integral over the whole box.
double box_integral(const GridFunction& f);

// All dyadic cubes of the box up to and including max_level, optionally
// together with their t-fold dilations (clipped).  This is the family all
// suprema in the library run over; constants so computed are comparable to
// full suprema over arbitrary cubes only up to a dimensional factor, which
// reports carry as a caveat rather than correcting for.
struct CubeFamily {
  Box box;
  int max_level = 0;
  double dilation = 0.0;  // 0 = dyadic cubes only; t > 1 adds clipped tQ

  CubeFamily() = default;
  CubeFamily(const Box& b, int maxlev, double t = 0.0) : box(b), max_level(maxlev), dilation(t) {
    if (maxlev < 0) throw std::invalid_argument("CubeFamily: negative max_level");
    if (t != 0.0 && t < 1.0) throw std::invalid_argument("CubeFamily: dilation must be >= 1");
  }

  // Number of dyadic cubes (dilations excluded): sum over v of 2^(v*dim).
  std::int64_t dyadic_count() const {
    std::int64_t total = 0;
    for (int v = 0; v <= max_level; ++v) total += std::int64_t{1} << (v * box.dim);
    return total;
  }

  std::vector<DyadicCube> dyadic_cubes() const;

  // Visit every member: fn(const DyadicCube&, bool dilated).  Dilated members
  // are passed via their parent dyadic cube; callers apply dilate_cube.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (int v = 0; v <= max_level; ++v) {
      const std::int64_t n = std::int64_t{1} << v;
      if (box.dim == 1) {
        for (std::int64_t k = 0; k < n; ++k) {
          DyadicCube q(box, v, k);
          fn(q, false);
          if (dilation > 0.0) fn(q, true);
        }
      } else {
        for (std::int64_t k0 = 0; k0 < n; ++k0)
          for (std::int64_t k1 = 0; k1 < n; ++k1) {
            DyadicCube q(box, v, k0, k1);
            fn(q, false);
            if (dilation > 0.0) fn(q, true);
          }
      }
    }
  }
};

CubeFamily enumerate_cubes(const Box& box, int max_level, double dilation = 0.0);

// Dyadic cube of the family's grid containing the sample with the given axis
// indices at grid level L (the grid the point indices refer to).
DyadicCube cube_containing(const Box& box, int cube_level, int grid_level,
                           std::int64_t i, std::int64_t j = 0);

}  // namespace mcz
